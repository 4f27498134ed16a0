"""Cox proportional-hazards fitting by damped Newton iterations.

Breslow tie handling throughout: tied events at one time share a single
risk-set denominator raised to the event count. Standard errors come from
the inverse of the observed information at the optimum; the 95% interval
uses z = 1.959963984540054.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from sage.survival.chi2 import chi2_sf
from sage.survival.types import SurvivalRecord

Z_95 = 1.959963984540054


@dataclass(frozen=True)
class CoxConfig:
    tol: float = 1e-8          # convergence on the gradient max-norm
    max_iter: int = 50
    tie_method: str = "breslow"
    divergence_bound: float = 15.0  # |log HR| beyond this means separation, not signal

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tie_method != "breslow":
            raise ValueError(f"unsupported tie method {self.tie_method!r}; only breslow ships")
        if self.divergence_bound <= 0:
            raise ValueError("divergence_bound must be positive")


@dataclass(frozen=True)
class CoxResult:
    covariate_names: tuple[str, ...]
    coefficients: tuple[float, ...]
    standard_errors: tuple[float, ...]
    ci_lower: tuple[float, ...]
    ci_upper: tuple[float, ...]
    p_values: tuple[float, ...]
    converged: bool
    iterations: int
    log_likelihood: float
    gradient_max_norm: float
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def hazard_ratios(self) -> tuple[float, ...]:
        return tuple(math.exp(c) for c in self.coefficients)

    def to_dict(self) -> dict:
        return {
            "covariate_names": list(self.covariate_names),
            "coefficients": list(self.coefficients),
            "standard_errors": list(self.standard_errors),
            "ci_lower": list(self.ci_lower),
            "ci_upper": list(self.ci_upper),
            "p_values": list(self.p_values),
            "hazard_ratios": list(self.hazard_ratios()),
            "converged": self.converged,
            "iterations": self.iterations,
            "log_likelihood": self.log_likelihood,
            "gradient_max_norm": self.gradient_max_norm,
            "warnings": list(self.warnings),
        }


def _design(records: Sequence[SurvivalRecord],
            covariates: Mapping[str, Sequence[float]]):
    if not covariates:
        raise ValueError("at least one covariate required")
    names = tuple(covariates.keys())
    n = len(records)
    for name in names:
        if len(covariates[name]) != n:
            raise ValueError(f"covariate {name!r} has {len(covariates[name])} values "
                             f"for {n} records")
    x = np.array([[float(covariates[name][i]) for name in names] for i in range(n)],
                 dtype=float)
    if not np.isfinite(x).all():
        raise ValueError("covariates must be finite")
    for j, name in enumerate(names):
        if np.ptp(x[:, j]) == 0.0:
            raise ValueError(f"covariate {name!r} is constant across subjects; "
                             "its effect is unidentifiable")
    return names, x


def partial_loglik(beta: np.ndarray, times: np.ndarray, events: np.ndarray,
                   x: np.ndarray):
    """Breslow partial log-likelihood with gradient and Hessian."""
    p = x.shape[1]
    ll = 0.0
    grad = np.zeros(p)
    hess = np.zeros((p, p))
    theta = x @ beta
    w = np.exp(theta)
    for t in np.unique(times[events]):
        dead = events & (times == t)
        at_risk = times >= t
        d = int(dead.sum())
        w_r = w[at_risk]
        x_r = x[at_risk]
        s0 = w_r.sum()
        s1 = w_r @ x_r
        xbar = s1 / s0
        s2 = (x_r * w_r[:, None]).T @ x_r
        ll += theta[dead].sum() - d * math.log(s0)
        grad += x[dead].sum(axis=0) - d * xbar
        hess -= d * (s2 / s0 - np.outer(xbar, xbar))
    return ll, grad, hess


def cox_ph(records: Sequence[SurvivalRecord],
           covariates: Mapping[str, Sequence[float]],
           config: CoxConfig = CoxConfig()) -> CoxResult:
    """Fit log hazard ratios; non-convergence is reported, never hidden."""
    names, x = _design(records, covariates)
    times = np.array([r.time for r in records], dtype=float)
    events = np.array([r.event for r in records], dtype=bool)
    if not events.any():
        raise ValueError("Cox model requires at least one event")

    beta = np.zeros(x.shape[1])
    ll, grad, hess = partial_loglik(beta, times, events, x)
    iterations = 0
    converged = bool(np.abs(grad).max() < config.tol)
    warnings: list[str] = []

    while not converged and iterations < config.max_iter:
        iterations += 1
        try:
            step = np.linalg.solve(-hess, grad)
        except np.linalg.LinAlgError:
            worst = names[int(np.argmin(np.abs(np.diag(-hess))))]
            raise ValueError(
                f"singular information matrix; covariate {worst!r} carries no "
                "independent information (collinear or degenerate)") from None
        # damp: halve the step until the likelihood does not decrease
        scale = 1.0
        for _ in range(30):
            candidate = beta + scale * step
            new_ll, new_grad, new_hess = partial_loglik(candidate, times, events, x)
            if new_ll >= ll - 1e-12:
                break
            scale *= 0.5
        else:
            warnings.append("step damping exhausted; likelihood may be monotone")
            break
        beta, ll, grad, hess = candidate, new_ll, new_grad, new_hess
        if np.abs(beta).max() > config.divergence_bound:
            # a log hazard ratio walking past the bound is the signature of a
            # monotone partial likelihood, not an estimate
            worst = names[int(np.argmax(np.abs(beta)))]
            warnings.append(
                f"coefficient for {worst!r} exceeded the divergence bound "
                f"({config.divergence_bound}); monotone likelihood / perfect "
                "separation suspected")
            break
        if np.abs(grad).max() < config.tol:
            converged = True

    if not converged and not warnings:
        warnings.append(
            f"no convergence within {config.max_iter} iterations "
            f"(gradient max-norm {np.abs(grad).max():.3e}); "
            "monotone likelihood / separation is a common cause")

    info = -hess
    try:
        cov = np.linalg.inv(info)
        se = np.sqrt(np.maximum(np.diag(cov), 0.0))
    except np.linalg.LinAlgError:
        se = np.full(x.shape[1], math.inf)
        warnings.append("information matrix singular at the optimum; SEs undefined")

    coefficients = tuple(float(b) for b in beta)
    standard_errors = tuple(float(s) for s in se)
    ci_lower = tuple(b - Z_95 * s for b, s in zip(coefficients, standard_errors))
    ci_upper = tuple(b + Z_95 * s for b, s in zip(coefficients, standard_errors))
    p_values = tuple(
        1.0 if (s == 0.0 or not math.isfinite(s)) else chi2_sf((b / s) ** 2, 1)
        for b, s in zip(coefficients, standard_errors))
    return CoxResult(
        covariate_names=names,
        coefficients=coefficients,
        standard_errors=standard_errors,
        ci_lower=ci_lower,
        ci_upper=ci_upper,
        p_values=p_values,
        converged=converged,
        iterations=iterations,
        log_likelihood=float(ll),
        gradient_max_norm=float(np.abs(grad).max()),
        warnings=tuple(warnings),
    )

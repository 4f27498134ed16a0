"""Stage backend contract and deterministic mock backends.

A backend is a single function ``fn(stage, context_text, state) -> artifact``
where ``artifact`` is a JSON-able dict that should carry a ``text`` field
(the narrative output used for downstream context and token accounting).
``state`` is runner-controlled: it exposes the run seed, the structured
artifacts of exactly the sources the context policy allowed, and loop
metadata (revision critiques, data-bank listings). Live model bindings are
out of scope; the shipped mocks are template-driven and reproducible.
"""

from __future__ import annotations

import hashlib
import re
from typing import Any, Callable, Mapping

from sage.pipeline.types import render_hypothesis_text

StageBackend = Callable[[str, str, Mapping[str, Any]], dict]


class BackendError(RuntimeError):
    """A stage backend failed; carries the stage name for run diagnostics."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage!r}: {message}")
        self.stage = stage


def _h(*parts) -> int:
    blob = "\x1f".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


_STOPWORDS = {
    "the", "and", "with", "for", "from", "does", "what", "how", "why",
    "between", "into", "affect", "role", "study", "link", "relationship",
    "query",
}

_MECHANISMS = (
    "lipid transport flux",
    "fatty acid receptor signaling",
    "PPAR-gamma activation",
    "immune infiltrate remodeling",
    "angiogenic sprouting",
)

_ENDPOINTS = (
    "disease progression",
    "overall survival",
    "treatment resistance",
    "metastatic spread",
)

_RELATIONS = ("associated_with", "upregulates", "activates", "predicts")

_POPULATIONS = (
    "patients with muscle-invasive tumors",
    "patients with high-grade primary tumors",
    "treatment-naive patients under active surveillance",
)

_ROLES = (
    "a lipid chaperone implicated in intracellular trafficking",
    "a transcriptional effector of metabolic stress",
    "a tissue-level process linked to tumor aggressiveness",
    "a clinical endpoint used for outcome stratification",
)


def _query_terms(query: str) -> list:
    terms = []
    for word in re.findall(r"[A-Za-z][A-Za-z0-9-]{2,}", query):
        if word.lower() in _STOPWORDS:
            continue
        terms.append(word)
    return terms or ["FABP5"]


def _mock_path_generation(stage, context, state) -> dict:
    seed = state.get("seed", 0)
    anchor = _query_terms(state.get("query") or context)[0]
    h = _h(seed, stage, context)
    candidates = []
    for i in range(3):
        mech = _MECHANISMS[(h >> (4 * i)) % len(_MECHANISMS)]
        endpoint = _ENDPOINTS[(h >> (4 * i + 2)) % len(_ENDPOINTS)]
        rel_a = _RELATIONS[(h >> (4 * i + 1)) % len(_RELATIONS)]
        rel_b = _RELATIONS[(h >> (4 * i + 3)) % len(_RELATIONS)]
        score = round(0.55 + ((h >> (8 * i)) % 40) / 100.0, 3)
        candidates.append(
            {
                "entities": [anchor, mech, endpoint],
                "relations": [rel_a, rel_b],
                "score": score,
            }
        )
    candidates.sort(key=lambda p: p["score"], reverse=True)
    paths = []
    lines = []
    for rank, cand in enumerate(candidates, start=1):
        cand = {"id": f"path-{rank}", **cand}
        paths.append(cand)
        a, b, c = cand["entities"]
        r1, r2 = cand["relations"]
        lines.append(f"{rank}. {a} -[{r1}]-> {b} -[{r2}]-> {c} (score {cand['score']:.3f})")
    return {"text": "Candidate mechanistic paths:\n" + "\n".join(lines), "paths": paths}


def _mock_ontologist(stage, context, state) -> dict:
    seed = state.get("seed", 0)
    paths = state.get("sources", {}).get("path_generation", {}).get("paths", [])
    if not paths:
        raise BackendError(stage, "no paths in upstream context")
    entities = []
    for path in paths:
        for entity in path["entities"]:
            if entity not in entities:
                entities.append(entity)
    h = _h(seed, stage, context)
    defs = [
        f"- {entity}: {_ROLES[(h >> (3 * i)) % len(_ROLES)]}"
        for i, entity in enumerate(entities)
    ]
    rels = [
        "- " + " -> ".join(path["entities"]) + f" (via {', '.join(path['relations'])})"
        for path in paths
    ]
    text = "Entity definitions:\n" + "\n".join(defs) + "\nRelationships:\n" + "\n".join(rels)
    return {"text": text, "entities": entities, "chains": [p["entities"] for p in paths]}


def _mock_scientist(stage, context, state) -> dict:
    seed = state.get("seed", 0)
    chains = state.get("sources", {}).get("ontologist", {}).get("chains", [])
    if not chains:
        raise BackendError(stage, "no entity chains in upstream context")
    chain = chains[0]
    if len(chain) < 2:
        raise BackendError(stage, "upstream chain has fewer than two entities")
    # chains from a real graph can be any hop count; take the first
    # intermediate as the mechanism when one exists
    anchor, endpoint = chain[0], chain[-1]
    mechanism = chain[1] if len(chain) > 2 else "direct regulatory coupling"
    h = _h(seed, stage, context)
    population = _POPULATIONS[h % len(_POPULATIONS)]
    fields = {
        "statement": f"Elevated {anchor} drives {endpoint} through {mechanism}.",
        "population": population,
        "variables": [anchor, mechanism],
        "outcome": endpoint,
        "expected_directionality": "",
        "validation_feasibility": "",
    }
    return {"text": render_hypothesis_text(fields), "hypothesis": fields}


def _mock_hypothesis_expansion(stage, context, state) -> dict:
    seed = state.get("seed", 0)
    draft = state.get("sources", {}).get("scientist", {}).get("hypothesis")
    if not draft:
        raise BackendError(stage, "no hypothesis draft in upstream context")
    fields = dict(draft)
    fields["variables"] = list(draft.get("variables", ()))
    anchor = fields["variables"][0] if fields["variables"] else "the marker"
    fields["expected_directionality"] = (
        f"higher {anchor} predicts worse {fields.get('outcome', 'outcome')}"
    )
    fields["validation_feasibility"] = (
        "testable on a retrospective survival cohort via stratified group comparison"
    )
    revision = state.get("revision")
    if revision:
        k = revision.get("iteration", 1)
        fields["statement"] = (
            f"{draft.get('statement', '').rstrip('.')} "
            f"(revision {k}: narrowed to {fields.get('population', 'the cohort')} "
            f"with explicit confounder control)."
        )
    h = _h(seed, stage, context, revision and revision.get("iteration"))
    references = [f"PMID:{3000000 + ((h >> (6 * i)) % 700000)}" for i in range(3)]
    justification = (
        f"Prior reports connect {anchor} to {fields.get('outcome', 'outcome')} via "
        f"{', '.join(fields['variables'][1:]) or 'the proposed mechanism'}; the expanded "
        "statement fixes the cohort, the exposure contrast, and the endpoint."
    )
    text = (
        render_hypothesis_text(fields)
        + "\nJustification: "
        + justification
        + "\nReferences: "
        + ", ".join(references)
    )
    artifact = {
        "text": text,
        "hypothesis": fields,
        "justification": justification,
        "references": references,
    }
    if revision:
        artifact["revision_iteration"] = revision.get("iteration", 1)
    return artifact


def _mock_coding_instructions(stage, context, state) -> dict:
    data_bank = state.get("data_bank", [])
    if not data_bank:
        raise BackendError(stage, "no datasets in the configured data bank")
    dataset = data_bank[0]
    groups = list(dataset.get("groups", ()))[:2]
    steps = [
        {"tool": "kaplan_meier", "kwargs": {"dataset": dataset["name"], "group": g}}
        for g in groups
    ] or [{"tool": "kaplan_meier", "kwargs": {"dataset": dataset["name"]}}]
    if len(groups) == 2:
        steps.append(
            {
                "tool": "logrank_test",
                "kwargs": {"dataset": dataset["name"], "groups": groups},
            }
        )
    lines = [
        f"1. Estimate survivor functions per group on dataset {dataset['name']!r}.",
    ]
    if len(groups) == 2:
        lines.append(
            f"2. Compare groups {groups[0]!r} vs {groups[1]!r} with a two-sample rank test."
        )
    text = "Validation plan:\n" + "\n".join(lines)
    return {"text": text, "plan": {"steps": steps}}


def _mock_results_interpreter(stage, context, state) -> dict:
    seed = state.get("seed", 0)
    coding = state.get("sources", {}).get("coding", {})
    p_value = None
    for step in coding.get("results", ()):
        if step.get("tool") == "logrank_test":
            p_value = step.get("result", {}).get("p_value")
    if p_value is not None:
        reading = (
            "consistent with the hypothesized separation"
            if p_value < 0.05
            else "not conclusive for the hypothesized separation"
        )
        verdict_line = f"The group comparison yields log-rank p = {p_value:.4g}, {reading}."
    else:
        verdict_line = "No group comparison was produced; interpretation limited to survivor-curve shape."
    h = _h(seed, stage, context)
    post_hoc = float(7 + h % 3)
    text = (
        verdict_line
        + f" Post-hoc feasibility of the full validation programme: {post_hoc:.0f}/10."
    )
    return {"text": text, "post_hoc_feasibility": post_hoc}


def _mock_summary(stage, context, state) -> dict:
    sources = state.get("sources", {})
    expansion = sources.get("hypothesis_expansion", {})
    interpreter = sources.get("results_interpreter", {})
    novelty = sources.get("novelty_critic", {})
    summary = {
        "hypothesis": expansion.get("hypothesis", {}).get("statement", ""),
        "rationale": expansion.get("justification", "") or interpreter.get("text", ""),
        "novelty_score": novelty.get("verdict", {}).get("final_score"),
        "feasibility_score": interpreter.get("post_hoc_feasibility"),
        "references": list(expansion.get("references", ())),
    }
    text = "\n".join(
        [
            f"Hypothesis: {summary['hypothesis']}",
            f"Rationale: {summary['rationale']}",
            f"Novelty score: {summary['novelty_score']}",
            f"Feasibility score: {summary['feasibility_score']}",
            "References: " + ", ".join(summary["references"]),
        ]
    )
    return {"text": text, "summary": summary}


def _mock_revise_plan(stage, context, state) -> dict:
    # placeholder reviser: echoes the plan; real recovery strategies are
    # injected per run (tests script them)
    return {"text": "plan unchanged", "plan": state.get("plan", {})}


def make_mock_backends(seed: int = 0) -> dict:
    """Template-driven deterministic backends for every text stage."""
    del seed  # the runner passes the seed through state; kept for symmetry
    return {
        "path_generation": _mock_path_generation,
        "ontologist": _mock_ontologist,
        "scientist": _mock_scientist,
        "hypothesis_expansion": _mock_hypothesis_expansion,
        "coding_instructions": _mock_coding_instructions,
        "results_interpreter": _mock_results_interpreter,
        "summary": _mock_summary,
        "revise_plan": _mock_revise_plan,
    }

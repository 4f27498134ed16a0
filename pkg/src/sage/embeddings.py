"""Embedding providers for entity names, queries, and path descriptions.

All providers emit unit-norm float64 vectors. The mock provider is fully
deterministic (seeded PCG64 keyed by a stable text hash) so tests and
pipeline runs are reproducible across platforms; the remote provider speaks
a minimal JSON-over-HTTP contract ``{"texts": [...]} -> {"vectors": [[...]]}``.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_DIM = 64
REMOTE_URL_ENV = "SAGE_EMBED_URL"
REMOTE_BATCH_CAP = 128

UNIT_NORM_TOL = 1e-9


class EmbeddingError(Exception):
    """Base error for embedding operations."""


class RemoteEmbeddingError(EmbeddingError):
    """Remote backend unavailable or returned a bad response.

    Carries ``status`` (HTTP status code or None for transport errors) and
    ``retryable`` so callers can decide whether to retry.
    """

    def __init__(self, message: str, status: int | None = None, retryable: bool = True):
        super().__init__(message)
        self.status = status
        self.retryable = retryable


def embedding_text(name: str, ontology_type: str) -> str:
    """Canonical text embedded for a graph entity, e.g. ``"FN1 [Gene]"``.

    The type suffix disambiguates homonyms that live under different
    ontology types.
    """
    return f"{name} [{ontology_type}]"


def _normalize(vec: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise EmbeddingError("cannot normalize a zero vector")
    return vec / norm


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity of two unit vectors, clipped to [-1, 1]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise EmbeddingError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.clip(np.dot(a, b), -1.0, 1.0))


class EmbeddingProvider:
    """Interface: deterministic text -> unit vector."""

    dim: int = DEFAULT_DIM

    def embed(self, text: str) -> np.ndarray:
        raise NotImplementedError

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        return [self.embed(t) for t in texts]


class MockEmbeddingProvider(EmbeddingProvider):
    """Seeded pseudo-random unit vectors keyed by a stable hash of the text.

    Two providers with the same (seed, dim) produce byte-identical vectors
    for the same text on any platform: the per-text generator seed is taken
    from SHA-256, and the arithmetic is fixed-order float64.
    """

    def __init__(self, seed: int = 0, dim: int = DEFAULT_DIM):
        if dim < 2:
            raise ValueError("mock embedding dimension must be >= 2")
        self.seed = seed
        self.dim = dim
        self._cache: dict[str, np.ndarray] = {}

    def embed(self, text: str) -> np.ndarray:
        if not text:
            raise EmbeddingError("cannot embed empty text")
        cached = self._cache.get(text)
        if cached is not None:
            return cached
        digest = hashlib.sha256(f"{self.seed}\x1f{text}".encode("utf-8")).digest()
        gen_seed = int.from_bytes(digest[:8], "big")
        rng = np.random.Generator(np.random.PCG64(gen_seed))
        vec = _normalize(rng.standard_normal(self.dim))
        self._cache[text] = vec
        return vec


class StaticEmbeddingProvider(EmbeddingProvider):
    """Pinned vectors for chosen texts, mock fallback for everything else.

    Used to plant controlled cosines (e.g. near-duplicate entity names) in
    fixtures without touching unrelated entities.
    """

    def __init__(self, vectors: dict[str, np.ndarray] | None = None,
                 fallback: EmbeddingProvider | None = None, dim: int = DEFAULT_DIM):
        self.dim = dim
        self.fallback = fallback or MockEmbeddingProvider(dim=dim)
        self._vectors: dict[str, np.ndarray] = {}
        for text, vec in (vectors or {}).items():
            self.pin(text, vec)

    def pin(self, text: str, vec: np.ndarray) -> None:
        arr = np.asarray(vec, dtype=float)
        if arr.shape != (self.dim,):
            raise EmbeddingError(f"pinned vector for {text!r} has shape {arr.shape}, want ({self.dim},)")
        self._vectors[text] = _normalize(arr)

    def embed(self, text: str) -> np.ndarray:
        if text in self._vectors:
            return self._vectors[text]
        return self.fallback.embed(text)


class RemoteEmbeddingProvider(EmbeddingProvider):
    """Client for a remote embedding service.

    Contract: POST ``{"texts": [...]}`` to the endpoint, receive
    ``{"vectors": [[...], ...]}``. Requests are chunked at 128 texts.
    The endpoint comes from the constructor or the SAGE_EMBED_URL env var.
    """

    def __init__(self, url: str | None = None, dim: int = DEFAULT_DIM, timeout: float = 30.0):
        self.url = url or os.environ.get(REMOTE_URL_ENV, "")
        if not self.url:
            raise EmbeddingError(f"no remote embedding endpoint configured (set {REMOTE_URL_ENV})")
        self.dim = dim
        self.timeout = timeout

    def embed(self, text: str) -> np.ndarray:
        return self.embed_batch([text])[0]

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        import httpx

        for t in texts:
            if not t:
                raise EmbeddingError("cannot embed empty text")
        out: list[np.ndarray] = []
        for start in range(0, len(texts), REMOTE_BATCH_CAP):
            chunk = list(texts[start:start + REMOTE_BATCH_CAP])
            try:
                resp = httpx.post(self.url, json={"texts": chunk}, timeout=self.timeout)
            except httpx.HTTPError as exc:
                raise RemoteEmbeddingError(f"embedding backend unreachable: {exc}", status=None) from exc
            if resp.status_code != 200:
                raise RemoteEmbeddingError(
                    f"embedding backend returned HTTP {resp.status_code}",
                    status=resp.status_code,
                    retryable=resp.status_code >= 500,
                )
            body = resp.json()
            vectors = body.get("vectors")
            if not isinstance(vectors, list) or len(vectors) != len(chunk):
                raise RemoteEmbeddingError("embedding backend returned a malformed payload",
                                           status=resp.status_code, retryable=False)
            for vec in vectors:
                out.append(_normalize(np.asarray(vec, dtype=float)))
        return out


@dataclass(frozen=True)
class DomainCenter:
    """Unit-norm centroid of a target domain (e.g. "bladder cancer")."""

    vector: np.ndarray
    label: str

    def __post_init__(self):
        norm = float(np.linalg.norm(self.vector))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise EmbeddingError(f"domain center must be unit norm, got {norm}")


def domain_center(entity_texts: Sequence[str], provider: EmbeddingProvider,
                  label: str = "") -> DomainCenter:
    """Normalized mean of the member embeddings.

    Raises EmbeddingError on an empty member list or a degenerate
    (zero-mean) combination.
    """
    if not entity_texts:
        raise EmbeddingError("domain center needs at least one entity text")
    vectors = provider.embed_batch(entity_texts)
    mean = np.mean(np.stack(vectors), axis=0)
    if float(np.linalg.norm(mean)) < 1e-12:
        raise EmbeddingError("degenerate domain center: member embeddings cancel out")
    return DomainCenter(vector=_normalize(mean), label=label or entity_texts[0])


@dataclass
class EmbedConfig:
    """Provider selection for a pipeline stage (mock | remote | static)."""

    kind: str = "mock"
    seed: int = 0
    dim: int = DEFAULT_DIM
    url: str | None = None
    pinned: dict[str, list[float]] = field(default_factory=dict)

    def build(self) -> EmbeddingProvider:
        if self.kind == "mock":
            return MockEmbeddingProvider(seed=self.seed, dim=self.dim)
        if self.kind == "static":
            vectors = {t: np.asarray(v, dtype=float) for t, v in self.pinned.items()}
            return StaticEmbeddingProvider(vectors, fallback=MockEmbeddingProvider(seed=self.seed, dim=self.dim), dim=self.dim)
        if self.kind == "remote":
            return RemoteEmbeddingProvider(url=self.url, dim=self.dim)
        raise ValueError(f"unknown embedding provider kind: {self.kind!r}")

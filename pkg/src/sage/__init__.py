"""SAGE: hypothesis-discovery engine.

Subpackages:
    kg          - knowledge-graph construction, fusion, pruning, GraphML I/O,
                  quality sampling
    embeddings  - embedding providers (deterministic mock + remote client)
    pathrank    - multi-hop path enumeration and four-metric scoring
    debate      - Prover/Verifier/Judge novelty deliberation + tier benchmark
    feasibility - weighted four-criterion feasibility assessment
    survival    - joint stratification, Kaplan-Meier, log-rank, Cox PH
    pipeline    - sequential agent pipeline, persistence, review service
"""

__version__ = "0.1.0"

SCHEMA_VERSION = "1"

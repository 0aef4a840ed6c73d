"""HTTP facade over the pipeline.

One immutable graph is loaded at startup and shared read-only.  Query results
are cached in memory by query id so the UI can page through clusters, switch
ranking heuristics without recomputation, fetch judgment pairs, and post
grades.  Identical request sequences against a fresh service produce
identical responses.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .clustering import Heuristic
from .errors import KlusTreeError, PipelineError
from .evaluation import judgment_pairs_json
from .graph_store import Graph, load_graph_path
from .pipeline import (
    Method,
    PipelineConfig,
    PipelineResult,
    _cluster_entries,
    config_with,
    run_pipeline_full,
)

_HEURISTICS = {h.value: h for h in Heuristic}
_METHODS = {m.value: m for m in Method}
_NUMERIC_PARAMS = {
    "lambda": ("lam", float),
    "mu": ("mu", float),
    "mu_s": ("mu_s", float),
    "mu_o": ("mu_o", float),
    "gamma": ("gamma", float),
    "top_n": ("top_n", int),
    "k_min": ("k_min", int),
    "k_max": ("k_max", int),
    "seed": ("seed", int),
}


@dataclass
class _ServiceState:
    graph: Graph
    base_config: PipelineConfig
    results: dict[str, PipelineResult] = field(default_factory=dict)
    judgments: list[dict] = field(default_factory=list)
    counter: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


def _bad_request(message: str):
    return HTTPException(status_code=400, detail=message)


def _parse_query_payload(payload: dict, base: PipelineConfig) -> tuple[list[str], PipelineConfig]:
    keywords = payload.get("keywords")
    if not isinstance(keywords, list) or not all(
        isinstance(k, str) and k.strip() for k in keywords
    ):
        raise _bad_request("keywords must be a list of non-empty strings")
    if len(keywords) < 2:
        raise _bad_request("a query needs at least 2 keywords")
    updates: dict = {}
    method = payload.get("method", base.method.value)
    if method not in _METHODS:
        raise _bad_request(f"unknown method {method!r}")
    updates["method"] = _METHODS[method]
    heuristic = payload.get("heuristic", base.heuristic.value)
    if heuristic not in _HEURISTICS:
        raise _bad_request(f"unknown heuristic {heuristic!r}")
    updates["heuristic"] = _HEURISTICS[heuristic]
    for key, (attr, cast) in _NUMERIC_PARAMS.items():
        if key in payload:
            try:
                updates[attr] = cast(payload[key])
            except (TypeError, ValueError):
                raise _bad_request(f"parameter {key!r} must be a {cast.__name__}")
    try:
        cfg = config_with(base, **updates)
    except (KlusTreeError, ValueError) as exc:
        raise _bad_request(str(exc))
    return keywords, cfg


def create_app(cfg: PipelineConfig, graph: Graph | None = None) -> FastAPI:
    """Build the service over an immutable, already-indexed graph."""
    state = _ServiceState(
        graph=graph if graph is not None else load_graph_path(cfg.graph_path),
        base_config=cfg,
    )
    app = FastAPI(title="klustree", docs_url=None, redoc_url=None)
    # the browser explorer is served from a different origin during development
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    def malformed_body(_request: Request, exc: RequestValidationError):
        # structurally malformed payloads are bad requests, not server faults
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    def _get_result(query_id: str) -> PipelineResult:
        result = state.results.get(query_id)
        if result is None:
            raise HTTPException(status_code=404, detail=f"unknown query id {query_id!r}")
        return result

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "triples": len(state.graph.triples),
            "nodes": len(state.graph.nodes),
        }

    @app.post("/api/query")
    def post_query(payload: dict = Body(...)):
        keywords, run_cfg = _parse_query_payload(payload, state.base_config)
        try:
            result = run_pipeline_full(run_cfg, keywords, graph=state.graph)
        except PipelineError as exc:
            raise _bad_request(str(exc))
        with state.lock:
            state.counter += 1
            query_id = f"q{state.counter}"
            state.results[query_id] = result
        return {"id": query_id, "document": result.document}

    @app.get("/api/query/{query_id}")
    def get_query(query_id: str):
        result = _get_result(query_id)
        return {"id": query_id, "document": result.document}

    @app.get("/api/query/{query_id}/clusters")
    def get_clusters(query_id: str, heuristic: str | None = None):
        result = _get_result(query_id)
        name = heuristic if heuristic is not None else result.document["heuristic"]
        if name not in _HEURISTICS:
            raise _bad_request(f"unknown heuristic {name!r}")
        if result.clustering is None:
            return {"id": query_id, "heuristic": name, "clusters": []}
        ranking = result.rankings[_HEURISTICS[name]]
        entries = _cluster_entries(result.clustering, ranking, result.document["trees"])
        return {"id": query_id, "heuristic": name, "clusters": entries}

    @app.get("/api/query/{query_id}/pairs")
    def get_pairs(query_id: str):
        result = _get_result(query_id)
        pairs = judgment_pairs_json(result.judgment_pairs, result.document["trees"])
        return {"id": query_id, "pairs": pairs}

    @app.post("/api/judgments")
    def post_judgments(payload: dict = Body(...)):
        query_id = payload.get("query_id")
        if not isinstance(query_id, str):
            raise _bad_request("query_id must be a string")
        result = _get_result(query_id)
        kind = payload.get("kind", "clusters")
        if kind not in ("clusters", "pairs"):
            raise _bad_request(f"unknown judgment kind {kind!r}")
        grades_raw = payload.get("grades")
        if not isinstance(grades_raw, dict) or not grades_raw:
            raise _bad_request("grades must be a non-empty object")
        if kind == "clusters":
            id_limit = result.clustering.k if result.clustering is not None else 0
            id_name = "cluster id"
        else:
            id_limit = len(result.judgment_pairs)
            id_name = "pair index"
        grades: dict[int, int] = {}
        for key_text, grade in grades_raw.items():
            try:
                key = int(key_text)
                grade = int(grade)
            except (TypeError, ValueError):
                raise _bad_request(f"grades must map each {id_name} to an integer")
            if not 0 <= key < id_limit:
                raise _bad_request(f"unknown {id_name} {key}")
            if not 1 <= grade <= 5:
                raise _bad_request("grades must be in 1..5")
            grades[key] = grade
        record = {
            "query_id": query_id,
            "kind": kind,
            "method": str(payload.get("method", result.document["method"])),
            "grades": {str(key): grade for key, grade in sorted(grades.items())},
        }
        with state.lock:
            state.judgments.append(record)
            count = len(state.judgments)
        return {"status": "stored", "count": count}

    app.state.klustree = state
    return app

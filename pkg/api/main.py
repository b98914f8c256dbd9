# api/main.py
import json
from typing import Dict, List, Optional

from fastapi import FastAPI, File, HTTPException, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from loguru import logger
from pydantic import BaseModel

from bench.run_registry import BenchRunTracker
from config import configure_logging, settings
from database.config import create_tables
from detection.antichain import max_candidate, sort_key
from detection.deadline import Deadline
from detection.decor import decor
from detection.naive import naive_max_commutative
from factor_graph.commutativity import is_commutative
from factor_graph.crv import compress_to_crv
from factor_graph.errors import FactorGraphError, UnknownNameError
from factor_graph.io import parse_factor_graph
from factor_graph.models import FactorGraph
from factor_graph.schemas import CandidateSchema, DetectionSchema, FactorGraphSchema, GroupingSchema
from lifting.colour_passing import DETECTORS, run_cpr

app = FastAPI(title="Commutative Factor Detection API")

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # Allow all origins for development
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Models for API requests
class DetectRequest(BaseModel):
    graph: FactorGraphSchema
    factor: str
    algorithm: str = "decor"
    timeout_ms: Optional[int] = None
    verify: bool = False


class CompressRequest(BaseModel):
    graph: FactorGraphSchema
    factor: str
    subset: List[str]


class LiftRequest(BaseModel):
    graph: FactorGraphSchema
    evidence: Optional[Dict[str, str]] = None
    detector: str = "decor"
    arity_limit: Optional[int] = None


@app.on_event("startup")
async def startup_event():
    configure_logging()
    app.state.tracker = BenchRunTracker()
    try:
        create_tables()
    except Exception as e:
        logger.error(f"Error creating benchmark tables: {e}")


def _graph(schema: FactorGraphSchema) -> FactorGraph:
    try:
        return parse_factor_graph(schema)
    except FactorGraphError as e:
        raise HTTPException(status_code=400, detail=str(e))


def _tracker() -> BenchRunTracker:
    tracker = getattr(app.state, "tracker", None)
    if tracker is None:
        tracker = app.state.tracker = BenchRunTracker()
    return tracker


@app.get("/")
async def root():
    return {"message": "Commutative Factor Detection API"}


@app.post("/detect", response_model=DetectionSchema)
def detect(request: DetectRequest):
    if request.algorithm not in DETECTORS:
        raise HTTPException(status_code=400, detail=f"Unknown algorithm '{request.algorithm}'")
    graph = _graph(request.graph)
    try:
        factor = graph.factor(request.factor)
    except UnknownNameError:
        raise HTTPException(status_code=404, detail=f"Factor '{request.factor}' not found")

    deadline = Deadline.after_ms(settings.default_timeout_ms if request.timeout_ms is None else request.timeout_ms)
    if request.algorithm == "decor":
        result = decor(factor, deadline)
        found = sorted(result.candidates, key=sort_key)
        status, stats = result.status, result.stats.to_dict()
    else:
        result = naive_max_commutative(factor, deadline)
        found = [result.subset] if result.subset else []
        status = result.status
        stats = {"subsets_tested": result.subsets_tested, "subsets_rejected": result.subsets_rejected}

    def candidate(positions):
        ordered = sorted(positions)
        return CandidateSchema(positions=ordered, arguments=[factor.arg_names[p] for p in ordered])

    best = max_candidate(found)
    return DetectionSchema(
        factor=factor.name,
        algorithm=request.algorithm,
        status=status.value,
        candidates=[candidate(c) for c in found],
        max_candidate=candidate(best) if best else None,
        verified=all(is_commutative(factor, c) for c in found) if request.verify else None,
        stats=stats,
    )


@app.post("/compress")
def compress(request: CompressRequest):
    graph = _graph(request.graph)
    try:
        factor = graph.factor(request.factor)
        positions = [factor.position_of(name) for name in request.subset]
    except UnknownNameError as e:
        raise HTTPException(status_code=404, detail=str(e))
    try:
        compressed = compress_to_crv(factor, positions)
    except FactorGraphError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {
        "factor": factor.name,
        "fixed_args": [arg.name for arg in compressed.fixed_args],
        "counted_args": [arg.name for arg in compressed.counted_args],
        "rows": compressed.to_frame().to_dict(orient="records"),
    }


def _lift(graph: FactorGraph, evidence, detector: str, arity_limit: Optional[int]) -> GroupingSchema:
    if detector not in DETECTORS:
        raise HTTPException(status_code=400, detail=f"Unknown detector '{detector}'")
    try:
        grouping = run_cpr(graph, evidence, arity_limit, detector)
    except FactorGraphError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return GroupingSchema(**grouping.to_dict())


@app.post("/lift", response_model=GroupingSchema)
def lift(request: LiftRequest):
    return _lift(_graph(request.graph), request.evidence, request.detector, request.arity_limit)


@app.post("/lift/upload", response_model=GroupingSchema)
def lift_upload(file: UploadFile = File(...)):
    logger.info(f"File upload received: {file.filename}")
    if not file.filename.endswith(".json"):
        raise HTTPException(status_code=400, detail="Only JSON factor graph files are supported")

    contents = file.file.read()
    try:
        data = json.loads(contents.decode("utf-8"))
        graph = parse_factor_graph(data)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise HTTPException(status_code=400, detail=f"Invalid JSON: {e}")
    except FactorGraphError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return _lift(graph, None, "decor", None)


@app.get("/bench-runs/")
async def get_bench_runs():
    return _tracker().list_runs()


@app.get("/bench-runs/{run_name}")
async def get_bench_run_details(run_name: str):
    details = _tracker().get_run_details(run_name)
    if not details:
        raise HTTPException(status_code=404, detail=f"Benchmark run '{run_name}' not found")
    return details

# factor_graph/io.py
import json
from pathlib import Path
from typing import Any, Dict, Union

from loguru import logger
from pydantic import ValidationError

from factor_graph.errors import FactorGraphError, InvalidGraphError
from factor_graph.factors import build_factor
from factor_graph.models import FactorGraph, RandomVariable
from factor_graph.schemas import FactorGraphSchema


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) + f": {first['msg']}"


def parse_factor_graph(data: Union[Dict[str, Any], FactorGraphSchema]) -> FactorGraph:
    """
    Build a FactorGraph from its JSON object form.

    Args:
        data: Parsed JSON object or an already validated schema.

    Returns:
        FactorGraph: The validated graph.
    """
    if isinstance(data, FactorGraphSchema):
        schema = data
    else:
        try:
            schema = FactorGraphSchema.parse_obj(data)
        except ValidationError as e:
            logger.error(f"Invalid factor graph document at {_location(e)}")
            raise InvalidGraphError(f"invalid factor graph document at {_location(e)}") from e

    variables = [RandomVariable(v.name, tuple(v.range), v.evidence) for v in schema.variables]
    by_name = {}
    for variable in variables:
        if variable.name in by_name:
            raise InvalidGraphError(f"duplicate variable name {variable.name}")
        by_name[variable.name] = variable

    factors = []
    for factor in schema.factors:
        missing = [name for name in factor.args if name not in by_name]
        if missing:
            logger.error(f"Factor {factor.name} references undeclared variables {missing}")
            raise InvalidGraphError(f"factor {factor.name} references undeclared variables {missing}")
        args = [by_name[name] for name in factor.args]
        try:
            factors.append(build_factor(factor.name, args, factor.table))
        except FactorGraphError as e:
            logger.error(f"Invalid factor {factor.name}: {e}")
            raise
    return FactorGraph(variables, factors)


def load_factor_graph(path: Union[str, Path]) -> FactorGraph:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        logger.error(f"{path} is not valid JSON: {e}")
        raise InvalidGraphError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise InvalidGraphError(f"{path} must contain a JSON object")
    graph = parse_factor_graph(data)
    logger.info(f"Loaded {graph} from {path}")
    return graph


def dump_factor_graph(graph: FactorGraph) -> Dict[str, Any]:
    return {
        "variables": [
            {"name": v.name, "range": list(v.range), "evidence": v.evidence} for v in graph.variables
        ],
        "factors": [
            {"name": f.name, "args": list(f.arg_names), "table": f.table_strings()} for f in graph.factors
        ],
    }


def save_factor_graph(graph: FactorGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(dump_factor_graph(graph), indent=2), encoding="utf-8")

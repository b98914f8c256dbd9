# factor_graph/potentials.py
from decimal import Context, Decimal, InvalidOperation
from typing import Union

from factor_graph.errors import InvalidPotentialError, NonPositivePotentialError

# Potentials are exact decimals; equality is Decimal equality ("0.50" == "0.5").
Potential = Decimal

PotentialLike = Union[str, int, Decimal]


def parse_potential(value: PotentialLike) -> Decimal:
    """
    Parse a potential from a decimal string, an integer or a Decimal.

    Floats and booleans are rejected because their text form is not exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidPotentialError(f"potential {value!r} must be a decimal string or an integer")
    if isinstance(value, Decimal):
        number = value
    elif isinstance(value, (str, int)):
        try:
            number = Decimal(str(value).strip())
        except InvalidOperation:
            raise InvalidPotentialError(f"potential {value!r} is not a decimal number") from None
    else:
        raise InvalidPotentialError(f"unsupported potential type {type(value).__name__}")

    if not number.is_finite():
        raise InvalidPotentialError(f"potential {value!r} is not finite")
    if number <= 0:
        raise NonPositivePotentialError(f"potential {value!r} is not strictly positive")
    return number


def format_potential(value: Decimal) -> str:
    """Normalized plain decimal string, e.g. Decimal("2.500") -> "2.5", Decimal("1E+2") -> "100"."""
    digits = len(value.as_tuple().digits)
    normalized = value.normalize(Context(prec=max(28, digits)))
    return format(normalized, "f")

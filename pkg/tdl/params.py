"""Parsing and validation of user-supplied parameters."""
from fractions import Fraction

from .commons import InvalidInputException
from .digraph import GraphKind, WeightParam, blow_up_pattern, from_hex, pattern_name

VALID_KINDS = set([k.value for k in GraphKind])


def parse_pattern_spec(spec):
    """``"r,t"`` -> ``(r, t)`` naming the pattern T_{r+1}^t."""
    parts = str(spec).replace(" ", "").split(",")
    if len(parts) != 2:
        raise InvalidInputException("Pattern spec %r must look like r,t (e.g. 2,1 for T_3)." % spec)
    try:
        r, t = int(parts[0]), int(parts[1])
    except ValueError:
        raise InvalidInputException("Pattern spec %r must hold two integers r,t." % spec)
    if r < 1 or t < 1:
        raise InvalidInputException("Pattern spec %r needs r >= 1 and t >= 1." % spec)
    return r, t


def pattern_from_spec(spec):
    """``(H, name, r)`` for ``"r,t"``."""
    r, t = parse_pattern_spec(spec)
    return blow_up_pattern(r, t), pattern_name(r, t), r


def parse_graph_text(text):
    """First non-empty, non-comment line of ``text`` in the ``D <n> <hex>`` format."""
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return from_hex(line)
    raise InvalidInputException("No graph line found, expected 'D <n> <hex>'.")


def parse_kind(value):
    return GraphKind.parse(value)


def parse_weight(value):
    return WeightParam.parse(value)


def parse_fraction(value, name="value", low=None, high=None):
    """Exact rational from an int, decimal or ``p/q`` string, optionally range checked (inclusive)."""
    try:
        x = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidInputException("%s %r is not a number." % (name, value))
    if (low is not None and x < low) or (high is not None and x > high):
        raise InvalidInputException("%s must lie in [%s, %s], got %s." % (name, low, high, value))
    return x


def parse_alpha_list(value):
    """``"0.05,0.1"`` -> ``[Fraction(1, 20), Fraction(1, 10)]``."""
    if value is None or str(value).strip() == "":
        return []
    return [parse_fraction(a, "alpha", 0) for a in str(value).split(",")]


def parse_set_list(value):
    """``"0,1;2,3"`` -> ``[[0, 1], [2, 3]]``."""
    groups = []
    for chunk in str(value).split(";"):
        chunk = chunk.strip()
        try:
            groups.append([int(x) for x in chunk.split(",")] if chunk else [])
        except ValueError:
            raise InvalidInputException("Vertex list %r must hold integers." % chunk)
    return groups


def check_n(n, name="n"):
    if n < 0:
        raise InvalidInputException("%s must be non-negative, got %s." % (name, n))
    return n

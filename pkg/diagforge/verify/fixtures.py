"""This file contains the identity fixture format: parsing, evaluation to a residual polynomial and perturbation.

A fixture file holds one identity lhs = rhs between prefix expressions, optionally modulo a relation polynomial
(exact divisibility) or over Q[g]/(minpoly) for an adjoined generator g. Example:

    # two cubes of quadratics summing to 2 - 2T^6
    id: elkies
    vars: T
    lhs: (+ (^ (- 1 T (^ T 2)) 3) (^ (+ 1 T (- (^ T 2))) 3))
    rhs: (- 2 (* 2 (^ T 6)))
"""

import logging
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from diagforge.algebra.field import determinant, format_rational, parse_rational
from diagforge.algebra.mpoly import MPoly
from diagforge.algebra.rational_function import RationalFunction
from diagforge.errors import FixtureFormatError, UnknownFixtureError

logger = logging.getLogger(__name__)

FIXTURE_SUFFIX = ".fix"

_HEADERS = ("id", "vars", "relation", "minpoly", "let", "lhs", "rhs", "note")
_REPEATABLE = ("let",)
_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_LITERAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")
_TOKEN_PATTERN = re.compile(r"\(|\)|[^\s()]+")


@dataclass(frozen=True)
class Call:
    """An operator applied to argument expressions."""

    operator: str
    arguments: Tuple["Expr", ...]

    def __str__(self) -> str:
        """Prefix rendering."""
        return f"({self.operator} {' '.join(render(a) for a in self.arguments)})"


Expr = Union[Fraction, str, Call]

# operator -> (minimum, maximum) argument count, None for unbounded
_ARITY = {
    "+": (0, None),
    "-": (1, None),
    "*": (0, None),
    "/": (2, 2),
    "^": (2, 2),
    "norm": (6, 6),
}


def render(expression: Expr) -> str:
    """The expression in fixture syntax."""
    if isinstance(expression, Fraction):
        return format_rational(expression)
    return str(expression)


@dataclass(frozen=True)
class IdentityFixture:
    """One identity lhs = rhs to be checked exactly."""

    # unique id, also the file stem of shipped fixtures
    fixture_id: str
    # free variables of the identity
    variables: Tuple[str, ...]
    lhs: Expr
    rhs: Expr
    # named subexpressions, evaluated in order before lhs and rhs
    lets: Tuple[Tuple[str, Expr], ...] = ()
    # the identity only needs to hold modulo this polynomial
    relation: Optional[Expr] = None
    # (generator, monic polynomial in it) for identities over a number field
    minpoly: Optional[Tuple[str, Expr]] = None
    note: str = ""
    # file the fixture was read from
    source: str = field(default="<memory>", compare=False)

    @property
    def all_variables(self) -> Tuple[str, ...]:
        """The free variables followed by the adjoined generator, if any."""
        if self.minpoly is None or self.minpoly[0] in self.variables:
            return self.variables
        return self.variables + (self.minpoly[0],)


# --- parsing ---------------------------------------------------------------------------------------------------------


def parse_expression(text: str) -> Expr:
    """Parses one prefix expression.

    Raises:
        ValueError: unbalanced parentheses, unknown operators, wrong arity or trailing tokens
    """
    tokens = _TOKEN_PATTERN.findall(text)
    if not tokens:
        raise ValueError("empty expression")
    expression, position = _parse_tokens(tokens, 0)
    if position != len(tokens):
        raise ValueError(f"unexpected {tokens[position]!r} after a complete expression")
    return expression


def _parse_tokens(tokens: Sequence[str], position: int) -> Tuple[Expr, int]:
    token = tokens[position]
    if token == ")":
        raise ValueError("unexpected ')'")
    if token != "(":
        return _parse_atom(token), position + 1
    if position + 1 >= len(tokens):
        raise ValueError("unbalanced '('")
    operator = tokens[position + 1]
    if operator not in _ARITY:
        raise ValueError(f"unknown operator {operator!r}, expected one of {' '.join(_ARITY)}")
    position += 2
    arguments: List[Expr] = []
    while True:
        if position >= len(tokens):
            raise ValueError("unbalanced '('")
        if tokens[position] == ")":
            break
        argument, position = _parse_tokens(tokens, position)
        arguments.append(argument)
    low, high = _ARITY[operator]
    if len(arguments) < low or (high is not None and len(arguments) > high):
        raise ValueError(f"operator {operator!r} got {len(arguments)} arguments")
    if operator == "^":
        exponent = arguments[1]
        if not isinstance(exponent, Fraction) or exponent.denominator != 1 or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer literal, got {render(exponent)}")
    return Call(operator, tuple(arguments)), position + 1


def _parse_atom(token: str) -> Expr:
    if _LITERAL_PATTERN.match(token):
        return parse_rational(token)
    if _NAME_PATTERN.match(token):
        return token
    raise ValueError(f"bad token {token!r}")


def _names_in(expression: Expr) -> set:
    if isinstance(expression, str):
        return {expression}
    if isinstance(expression, Call):
        return set().union(*(_names_in(a) for a in expression.arguments))
    return set()


def _split_entries(text: str, source: str) -> List[Tuple[int, str, str]]:
    """(line, key, value) entries; indented lines continue the previous value."""
    entries: List[Tuple[int, str, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if raw[0].isspace():
            if not entries:
                raise FixtureFormatError(source, number, "continuation line before any header")
            line, key, value = entries[-1]
            entries[-1] = (line, key, f"{value} {stripped}")
            continue
        key, separator, value = stripped.partition(":")
        key = key.strip()
        if not separator or key not in _HEADERS:
            raise FixtureFormatError(source, number, f"expected one of {', '.join(_HEADERS)} followed by ':'")
        entries.append((number, key, value.strip()))
    return entries


def parse_fixture(text: str, source: str = "<memory>") -> IdentityFixture:
    """Parses the text of a fixture file.

    Raises:
        FixtureFormatError: any syntax problem, a missing header or an undeclared name
    """
    entries = _split_entries(text, source)
    values: Dict[str, Tuple[int, str]] = {}
    lets: List[Tuple[str, Expr]] = []
    defined: List[str] = []
    raw_lets: List[Tuple[int, str]] = []
    for line, key, value in entries:
        if key in _REPEATABLE:
            raw_lets.append((line, value))
            continue
        if key in values:
            raise FixtureFormatError(source, line, f"duplicate header {key!r}")
        values[key] = (line, value)
    for key in ("id", "vars", "lhs", "rhs"):
        if key not in values:
            raise FixtureFormatError(source, len(text.splitlines()), f"missing header {key!r}")

    def expression(line: int, value: str) -> Expr:
        try:
            return parse_expression(value)
        except ValueError as error:
            raise FixtureFormatError(source, line, str(error)) from None

    fixture_id = values["id"][1]
    if not _NAME_PATTERN.match(fixture_id):
        raise FixtureFormatError(source, values["id"][0], f"bad fixture id {fixture_id!r}")
    variables = tuple(values["vars"][1].split())
    bad = [v for v in variables if not _NAME_PATTERN.match(v)]
    if bad or len(set(variables)) != len(variables):
        raise FixtureFormatError(source, values["vars"][0], f"bad variable list {values['vars'][1]!r}")

    minpoly = None
    if "minpoly" in values:
        line, value = values["minpoly"]
        generator, _, body = value.partition(" ")
        if not _NAME_PATTERN.match(generator) or not body.strip():
            raise FixtureFormatError(source, line, "expected 'minpoly: <generator> <expression>'")
        minpoly = (generator, expression(line, body))
        if _names_in(minpoly[1]) - {generator}:
            raise FixtureFormatError(source, line, f"minimal polynomial may only involve {generator}")
    known = set(variables) | ({minpoly[0]} if minpoly else set())

    for line, value in raw_lets:
        name, _, body = value.partition(" ")
        if not _NAME_PATTERN.match(name) or not body.strip():
            raise FixtureFormatError(source, line, "expected 'let: <name> <expression>'")
        if name in known or name in defined:
            raise FixtureFormatError(source, line, f"name {name!r} is already defined")
        parsed = expression(line, body)
        _check_names(parsed, known | set(defined), source, line)
        lets.append((name, parsed))
        defined.append(name)

    scope = known | set(defined)
    sides = {}
    for key in ("lhs", "rhs"):
        line, value = values[key]
        sides[key] = expression(line, value)
        _check_names(sides[key], scope, source, line)
    relation = None
    if "relation" in values:
        line, value = values["relation"]
        relation = expression(line, value)
        _check_names(relation, scope, source, line)
    note = values["note"][1] if "note" in values else ""
    fixture = IdentityFixture(
        fixture_id, variables, sides["lhs"], sides["rhs"], tuple(lets), relation, minpoly, note, source
    )
    if relation is not None and evaluate_fixture_expression(fixture, relation).is_zero():
        raise FixtureFormatError(source, values["relation"][0], "the relation is the zero polynomial")
    return fixture


def _check_names(expression: Expr, scope: set, source: str, line: int) -> None:
    unknown = sorted(_names_in(expression) - scope)
    if unknown:
        raise FixtureFormatError(source, line, f"undeclared names {', '.join(unknown)}")


def load_fixture(path: Path) -> IdentityFixture:
    """Reads one fixture file."""
    path = Path(path)
    return parse_fixture(path.read_text(encoding="utf-8"), path.name)


def load_fixtures(directory: Path) -> List[IdentityFixture]:
    """All fixtures in a directory, sorted by id.

    Raises:
        FileNotFoundError: the directory does not exist
        FixtureFormatError: a malformed file or two fixtures sharing an id
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"fixture directory {directory} does not exist")
    fixtures: Dict[str, IdentityFixture] = {}
    for path in sorted(directory.glob(f"*{FIXTURE_SUFFIX}")):
        fixture = load_fixture(path)
        if fixture.fixture_id in fixtures:
            raise FixtureFormatError(path.name, 1, f"duplicate fixture id {fixture.fixture_id!r}")
        fixtures[fixture.fixture_id] = fixture
    logger.debug("loaded %d fixtures from %s", len(fixtures), directory)
    return [fixtures[k] for k in sorted(fixtures)]


def lookup(fixtures: Sequence[IdentityFixture], ids: Sequence[str]) -> List[IdentityFixture]:
    """The fixtures with the given ids, in the order asked for."""
    by_id = {f.fixture_id: f for f in fixtures}
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise UnknownFixtureError(f"unknown fixture {', '.join(missing)}, expected one of {', '.join(by_id)}")
    return [by_id[i] for i in ids]


# --- evaluation ------------------------------------------------------------------------------------------------------


Value = Union[MPoly, RationalFunction]


def _norm(arguments: Sequence[Value]) -> Value:
    """Norm of g0 + g1*t + g2*t^2 from Q[t]/(t^3 + m2 t^2 + m1 t + m0) down to the base."""
    g0, g1, g2, m0, m1, m2 = arguments

    def times_generator(v):
        a0, a1, a2 = v
        return (-m0 * a2, a0 - m1 * a2, a1 - m2 * a2)

    first = (g0, g1, g2)
    second = times_generator(first)
    third = times_generator(second)
    return determinant([list(row) for row in zip(first, second, third)])


def _evaluate(expression: Expr, environment: Mapping[str, Value]) -> Value:
    """Polynomials stay MPoly; the first division turns the value into a RationalFunction."""
    if isinstance(expression, Fraction):
        return MPoly.constant(expression)
    if isinstance(expression, str):
        return environment[expression]
    operator = expression.operator
    if operator == "^":
        return _evaluate(expression.arguments[0], environment) ** int(expression.arguments[1])
    values = [_evaluate(a, environment) for a in expression.arguments]
    if operator == "+":
        return sum(values[1:], values[0]) if values else MPoly.constant(0)
    if operator == "*":
        total = values[0] if values else MPoly.constant(1)
        for v in values[1:]:
            total = total * v
        return total
    if operator == "-":
        if len(values) == 1:
            return -values[0]
        total = values[0]
        for v in values[1:]:
            total = total - v
        return total
    if operator == "/":
        numerator = values[0] if isinstance(values[0], RationalFunction) else RationalFunction(values[0])
        return numerator / values[1]
    return _norm(values)


def _environment(fixture: IdentityFixture) -> Dict[str, Value]:
    environment: Dict[str, Value] = {name: MPoly.variable(name) for name in fixture.all_variables}
    for name, expression in fixture.lets:
        environment[name] = _evaluate(expression, environment)
    return environment


def _fraction_parts(value: Value) -> Tuple[MPoly, MPoly]:
    if isinstance(value, RationalFunction):
        return value.numerator, value.denominator
    return value, MPoly.constant(1, value.variables)


def evaluate_fixture_expression(fixture: IdentityFixture, expression: Expr) -> Value:
    """An expression of the fixture as a polynomial or rational function, with the let bindings in scope."""
    return _evaluate(expression, _environment(fixture))


@dataclass(frozen=True)
class Residual:
    """What is left of lhs - rhs after reduction; the identity holds iff `remainder` is zero."""

    remainder: MPoly
    # denominator of lhs - rhs, witnesses must not annihilate it
    denominator: MPoly


def residual(fixture: IdentityFixture) -> Residual:
    """Reduces the numerator of lhs - rhs modulo the minimal polynomial and the relation."""
    environment = _environment(fixture)
    difference = _evaluate(fixture.lhs, environment) - _evaluate(fixture.rhs, environment)
    remainder, denominator = _fraction_parts(difference)
    if fixture.minpoly is not None:
        generator, body = fixture.minpoly
        modulus, modulus_denominator = _fraction_parts(_evaluate(body, environment))
        if not modulus_denominator.is_constant():
            raise ValueError(f"minimal polynomial of {fixture.fixture_id} is not a polynomial")
        remainder = remainder.reduce_modulo(modulus, generator)
        denominator = denominator.reduce_modulo(modulus, generator)
    if fixture.relation is not None:
        relation = _fraction_parts(_evaluate(fixture.relation, environment))[0]
        remainder = remainder.divmod(relation)[1]
    return Residual(remainder, denominator)


def find_witness(fixture: IdentityFixture, reduced: Residual, seed: int) -> Dict[str, int]:
    """Small integers for the free variables at which the reduced difference does not vanish.

    Tries random points in boxes of growing size; a nonzero polynomial has a non-root in any box wider than its
    degree, so the search ends.
    """
    if reduced.remainder.is_zero():
        raise ValueError(f"fixture {fixture.fixture_id} holds, there is no witness")
    rng = np.random.default_rng(seed)
    names = fixture.variables
    bound = 1
    while True:
        bound += 1
        for _ in range(64):
            values = [int(v) for v in rng.integers(-bound, bound + 1, size=len(names))]
            assignment = dict(zip(names, values))
            if reduced.denominator.partial_evaluate(assignment).is_zero():
                continue
            if not reduced.remainder.partial_evaluate(assignment).is_zero():
                return assignment


# --- negative controls -----------------------------------------------------------------------------------------------


def _literal_paths(expression: Expr, path: Tuple[int, ...] = ()) -> List[Tuple[int, ...]]:
    if isinstance(expression, Fraction):
        return [path]
    if not isinstance(expression, Call):
        return []
    arguments = expression.arguments[:1] if expression.operator == "^" else expression.arguments
    paths = []
    for index, argument in enumerate(arguments):
        paths.extend(_literal_paths(argument, path + (index,)))
    return paths


def _increment_at(expression: Expr, path: Tuple[int, ...]) -> Expr:
    if not path:
        return expression + 1
    arguments = list(expression.arguments)
    arguments[path[0]] = _increment_at(arguments[path[0]], path[1:])
    return Call(expression.operator, tuple(arguments))


def perturb(fixture: IdentityFixture, rng: np.random.Generator) -> IdentityFixture:
    """A copy with one literal of lhs or rhs (exponents excepted) increased by one, such that the identity fails.

    Literals are tried in random order and one whose increment leaves the residual at zero is skipped. When no
    literal breaks the identity, 1 is added to rhs instead.
    """
    perturbed_id = f"{fixture.fixture_id}~perturbed"
    candidates = [("lhs", p) for p in _literal_paths(fixture.lhs)] + [("rhs", p) for p in _literal_paths(fixture.rhs)]
    for index in rng.permutation(len(candidates)):
        side, path = candidates[int(index)]
        changed = replace(fixture, fixture_id=perturbed_id, **{side: _increment_at(getattr(fixture, side), path)})
        if not residual(changed).remainder.is_zero():
            logger.debug("perturbing %s: %s literal at %s", fixture.fixture_id, side, path)
            return changed
        logger.debug("%s literal at %s does not enter the identity %s", side, path, fixture.fixture_id)
    return replace(fixture, fixture_id=perturbed_id, rhs=Call("+", (fixture.rhs, Fraction(1))))

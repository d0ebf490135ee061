"""Ensemble parameterization for weighted multipartite sparse random graphs.

An ensemble is described by a component count ``kappa``, exact component
fractions ``alpha``, a simple connected component-connection graph ``gamma``,
an edge-retention intensity ``p`` (edges survive with probability ``p/n`` at
matrix size ``n``), and the even moments ``X_2, X_4, ...`` of the symmetric
edge-weight law.  All scalar parameters are kept as :class:`fractions.Fraction`
so the recurrence engine and the walk oracle can agree bit-exactly; float
views are derived on demand for the Monte Carlo sampler.

Vertices are 1-based in all external formats (spec files, CSV); internal
0-based indexing is an implementation detail of the sampler.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ValidationError

RationalLike = Union[int, str, float, Fraction]

# Validation error kinds raised by this module.
KIND_ALPHA_SUM = "alpha_sum"
KIND_ALPHA_RANGE = "alpha_range"
KIND_GAMMA_SHAPE = "gamma_shape"
KIND_GAMMA_VALUES = "gamma_values"
KIND_GAMMA_SYMMETRY = "gamma_not_symmetric"
KIND_GAMMA_DIAGONAL = "gamma_nonzero_diagonal"
KIND_GAMMA_DISCONNECTED = "gamma_disconnected"
KIND_NONPOSITIVE_P = "nonpositive_p"
KIND_NEGATIVE_MOMENT = "negative_even_moment"
KIND_KAPPA = "kappa_degenerate"
KIND_EMPTY_COMPONENT = "empty_component"
KIND_RATIONAL = "rational_parse"
KIND_SPEC_FILE = "spec_file"


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int, a "num/den" or decimal string,
    a Fraction, or a float (interpreted via its shortest decimal repr)."""
    if isinstance(value, bool):
        raise ValidationError(KIND_RATIONAL, f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # repr() is the shortest decimal that round-trips, so "0.5" -> 1/2.
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(KIND_RATIONAL, f"cannot parse rational {value!r}: {exc}") from exc
    raise ValidationError(KIND_RATIONAL, f"cannot parse rational from {type(value).__name__}")


def rational_str(value: Fraction) -> str:
    """Serialize a Fraction as "num/den" (always with the denominator)."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class EnsembleSpec:
    """Full parameterization of a multipartite sparse-graph ensemble.

    Fields
    ------
    kappa:        number of components.
    alpha:        exact component fractions, one per component, summing to 1.
    gamma:        0/1 adjacency of the component-connection graph (simple,
                  symmetric, connected).
    p:            edge-retention intensity; an allowed pair (i, j) is kept
                  with probability p/n at size n.
    even_moments: X_2, X_4, ..., X_{2*t}: even moments of the weight law
                  (X_0 = 1 implicitly); entry f-1 holds X_{2f}.
    """

    kappa: int
    alpha: tuple[Fraction, ...]
    gamma: tuple[tuple[int, ...], ...]
    p: Fraction
    even_moments: tuple[Fraction, ...]

    @classmethod
    def make(
        cls,
        alpha: Sequence[RationalLike],
        gamma: Sequence[Sequence[int]],
        p: RationalLike,
        even_moments: Sequence[RationalLike],
    ) -> "EnsembleSpec":
        """Build and validate a spec from plain Python values."""
        spec = cls(
            kappa=len(alpha),
            alpha=tuple(parse_rational(a) for a in alpha),
            gamma=tuple(tuple(int(x) for x in row) for row in gamma),
            p=parse_rational(p),
            even_moments=tuple(parse_rational(x) for x in even_moments),
        )
        return validate_spec(spec)

    @classmethod
    def from_dict(cls, data: Mapping) -> "EnsembleSpec":
        """Parse (and validate) a spec from a JSON-compatible mapping."""
        try:
            alpha = data["alpha"]
            gamma = data["gamma"]
            p = data["p"]
            even_moments = data["even_moments"]
        except KeyError as exc:
            raise ValidationError(KIND_SPEC_FILE, f"spec file missing key {exc}") from exc
        if "kappa" in data and int(data["kappa"]) != len(alpha):
            raise ValidationError(
                KIND_SPEC_FILE,
                f"kappa={data['kappa']} does not match len(alpha)={len(alpha)}",
            )
        return cls.make(alpha, gamma, p, even_moments)

    def to_dict(self) -> dict:
        """JSON-compatible dict; rationals rendered as "num/den" strings."""
        return {
            "kappa": self.kappa,
            "alpha": [rational_str(a) for a in self.alpha],
            "gamma": [list(row) for row in self.gamma],
            "p": rational_str(self.p),
            "even_moments": [rational_str(x) for x in self.even_moments],
        }

    # Accessors -------------------------------------------------------------

    @property
    def max_half_order(self) -> int:
        """Largest t such that X_{2t} is available."""
        return len(self.even_moments)

    def even_moment(self, f: int) -> Fraction:
        """X_{2f}; X_0 = 1 by convention."""
        if f == 0:
            return Fraction(1)
        if f < 0 or f > len(self.even_moments):
            raise ValidationError(
                "insufficient_even_moments",
                f"X_{2 * f} requested but only {len(self.even_moments)} even moments supplied",
            )
        return self.even_moments[f - 1]

    def connected(self, comp_a: int, comp_b: int) -> bool:
        """Whether components comp_a and comp_b (1-based) may carry edges."""
        return self.gamma[comp_a - 1][comp_b - 1] == 1

    def alpha_floats(self) -> tuple[float, ...]:
        return tuple(float(a) for a in self.alpha)

    def p_float(self) -> float:
        return float(self.p)


def _gamma_connected(gamma: tuple[tuple[int, ...], ...]) -> bool:
    """Graph search: is the 0/1 adjacency matrix connected?"""
    kappa = len(gamma)
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in range(kappa):
            if gamma[v][w] == 1 and w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == kappa


def validate_spec(spec: EnsembleSpec) -> EnsembleSpec:
    """Check every structural invariant; return the spec unchanged if valid.

    Raises :class:`ValidationError` with a distinct ``kind`` per failure:
    alpha out of range / not summing to 1, gamma shape, non-0/1 entries,
    asymmetry, nonzero diagonal, disconnected gamma, non-positive p, and
    negative even moments.  kappa=1 is rejected (its matrix is identically
    zero) with a warning rather than emulated.
    """
    kappa = spec.kappa
    if kappa != len(spec.alpha):
        raise ValidationError(KIND_GAMMA_SHAPE, "kappa does not match len(alpha)")
    if kappa < 1:
        raise ValidationError(KIND_KAPPA, "kappa must be a positive integer")
    if kappa == 1:
        warnings.warn("kappa=1 gives an identically zero matrix; rejecting", stacklevel=2)
        raise ValidationError(KIND_KAPPA, "kappa=1 ensemble is degenerate (no allowed edges)")

    for i, a in enumerate(spec.alpha, start=1):
        if not (0 < a < 1):
            raise ValidationError(KIND_ALPHA_RANGE, f"alpha_{i}={a} is not strictly inside (0,1)")
    total = sum(spec.alpha, Fraction(0))
    if total != 1:
        raise ValidationError(KIND_ALPHA_SUM, f"alpha sums to {total}, expected exactly 1")

    if len(spec.gamma) != kappa or any(len(row) != kappa for row in spec.gamma):
        raise ValidationError(KIND_GAMMA_SHAPE, f"gamma must be a {kappa}x{kappa} matrix")
    for i in range(kappa):
        for j in range(kappa):
            if spec.gamma[i][j] not in (0, 1):
                raise ValidationError(
                    KIND_GAMMA_VALUES, f"gamma[{i + 1}][{j + 1}]={spec.gamma[i][j]} is not 0/1"
                )
    for i in range(kappa):
        if spec.gamma[i][i] != 0:
            raise ValidationError(KIND_GAMMA_DIAGONAL, f"gamma[{i + 1}][{i + 1}] must be 0")
        for j in range(i + 1, kappa):
            if spec.gamma[i][j] != spec.gamma[j][i]:
                raise ValidationError(
                    KIND_GAMMA_SYMMETRY, f"gamma[{i + 1}][{j + 1}] != gamma[{j + 1}][{i + 1}]"
                )
    if not _gamma_connected(spec.gamma):
        raise ValidationError(KIND_GAMMA_DISCONNECTED, "gamma is not connected")

    if spec.p <= 0:
        raise ValidationError(KIND_NONPOSITIVE_P, f"p={spec.p} must be positive")
    for f, x in enumerate(spec.even_moments, start=1):
        if x < 0:
            raise ValidationError(KIND_NEGATIVE_MOMENT, f"X_{2 * f}={x} is negative")
    return spec


def load_spec(path: str) -> EnsembleSpec:
    """Load and validate a spec from a JSON file.

    The document is an object with keys ``kappa``, ``alpha``, ``gamma``,
    ``p`` and ``even_moments``; rationals may be given as "num/den" strings
    to preserve exactness, or as plain numbers.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(KIND_SPEC_FILE, f"cannot read spec file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(KIND_SPEC_FILE, f"malformed spec file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(KIND_SPEC_FILE, f"spec file {path} must hold a JSON object")
    return EnsembleSpec.from_dict(data)


def save_spec(spec: EnsembleSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec.to_dict(), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class ComponentAssignment:
    """Deterministic assignment of the n vertices to the kappa components.

    ``component_of[v-1]`` is the (1-based) component of vertex v; components
    occupy contiguous, nondecreasing blocks whose sizes follow the exact
    fractions by largest-remainder apportionment.
    """

    n: int
    component_of: tuple[int, ...]
    block_sizes: tuple[int, ...]

    def block_range(self, comp: int) -> range:
        """Half-open 0-based vertex index range of a component."""
        start = sum(self.block_sizes[: comp - 1])
        return range(start, start + self.block_sizes[comp - 1])


def assign_components(n: int, spec: EnsembleSpec) -> ComponentAssignment:
    """Largest-remainder (Hamilton) apportionment of alpha*n vertices.

    Floors are assigned first; the leftover seats go to the components with
    the largest fractional parts, ties broken toward the smaller component
    index.  Deterministic, and exact in rational arithmetic.
    """
    kappa = spec.kappa
    if n < kappa:
        raise ValidationError(KIND_EMPTY_COMPONENT, f"n={n} < kappa={kappa}: some component would be empty")
    ideals = [a * n for a in spec.alpha]
    floors = [int(x) for x in ideals]  # Fraction -> trunc == floor (non-negative)
    leftover = n - sum(floors)
    order = sorted(range(kappa), key=lambda i: (-(ideals[i] - floors[i]), i))
    sizes = list(floors)
    for i in order[:leftover]:
        sizes[i] += 1
    if min(sizes) == 0:
        raise ValidationError(
            KIND_EMPTY_COMPONENT,
            f"n={n} too small for fractions {tuple(map(str, spec.alpha))}: a component is empty",
        )
    component_of: list[int] = []
    for comp, size in enumerate(sizes, start=1):
        component_of.extend([comp] * size)
    return ComponentAssignment(n=n, component_of=tuple(component_of), block_sizes=tuple(sizes))


def component_boundaries(assignment: ComponentAssignment) -> list[tuple[int, int]]:
    """Per-component half-open 0-based (start, end) vertex index ranges."""
    out: list[tuple[int, int]] = []
    start = 0
    for size in assignment.block_sizes:
        out.append((start, start + size))
        start += size
    return out


def bipartite_spec(
    alpha: Iterable[RationalLike] = ("1/2", "1/2"),
    p: RationalLike = 1,
    even_moments: Iterable[RationalLike] = (1, 1, 1, 1),
) -> EnsembleSpec:
    """Convenience constructor for the two-component base case."""
    return EnsembleSpec.make(list(alpha), [[0, 1], [1, 0]], p, list(even_moments))

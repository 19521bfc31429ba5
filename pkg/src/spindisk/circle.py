"""Antiperiodic two-colourings of the unit circle.

A colouring is the hidden variable of the spinning-disk model: an even
number k of switch angles 0 < theta_1 < ... < theta_k < pi splits (0, pi)
into k+1 segments coloured black, white, ..., black (black = +1).  The
second half circle (pi, 2*pi) carries the complementary colours, so the
induced +-1 function f satisfies f(x + pi) = -f(x) and the black and white
sets each have total measure pi.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi
PI = math.pi

#: Two angles closer than this are treated as coincident.
ANGLE_TOL = 1e-12

Angle = float


class ValidationError(ValueError):
    """Invalid model input."""


class OddSwitchCount(ValidationError):
    """Switch list has odd length; antiperiodicity needs an even count."""


class OutOfRange(ValidationError):
    """A switch angle lies outside the open interval (0, pi)."""


class DuplicateSwitch(ValidationError):
    """Two switch angles coincide within tolerance."""


def canonical_angle(x: float) -> float:
    """Reduce an angle to the canonical range [0, 2*pi)."""
    r = math.fmod(x, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:  # rounding can land exactly on 2*pi
        r = 0.0
    return r


@dataclass(frozen=True)
class Colouring:
    """Immutable disk colouring, stored as sorted interior switch angles."""

    switches: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.switches) % 2 != 0:
            raise OddSwitchCount(
                f"switch count must be even, got {len(self.switches)}"
            )
        prev = 0.0
        for s in self.switches:
            if not (0.0 < s < PI):
                raise OutOfRange(f"switch angle {s!r} not in (0, pi)")
            if s - prev <= ANGLE_TOL and prev != 0.0:
                raise DuplicateSwitch(
                    f"switch angles {prev!r} and {s!r} coincide within {ANGLE_TOL}"
                )
            if s <= prev:
                raise DuplicateSwitch(
                    f"switch angles must be strictly increasing, got {s!r} after {prev!r}"
                )
            prev = s

    @property
    def k(self) -> int:
        return len(self.switches)


def new_colouring(switch_angles: list[float] | tuple[float, ...]) -> Colouring:
    """Validate and build a Colouring; input angles may be unsorted."""
    return Colouring(tuple(sorted(float(s) for s in switch_angles)))


def triangle_colouring() -> Colouring:
    """The unique k=0 disk: black on (0, pi), white on (pi, 2*pi)."""
    return Colouring(())


def full_switch_set(c: Colouring) -> tuple[float, ...]:
    """All 2k+2 colour-change angles on [0, 2*pi), sorted.

    0 and pi are always switch points: the construction forces a colour
    change there.
    """
    return (0.0, *c.switches, PI, *(s + PI for s in c.switches))


def segments(c: Colouring) -> list[tuple[float, float, int]]:
    """Constant-colour arcs as (start, end, colour), covering [0, 2*pi)."""
    f = full_switch_set(c)
    ends = f[1:] + (TWO_PI,)
    return [(a, b, 1 if i % 2 == 0 else -1) for i, (a, b) in enumerate(zip(f, ends))]

def colour_at(c: Colouring, x: float) -> int:
    """Colour (+1 black / -1 white) at angle x, right-continuous at switches."""
    x = canonical_angle(x)
    idx = bisect_right(full_switch_set(c), x) - 1
    return 1 if idx % 2 == 0 else -1


def switch_parity(c: Colouring, x: float, gamma: float) -> str:
    """Parity ('even'/'odd') of the switch count in the half-open arc (x, x+gamma].

    Odd parity is equivalent to colour_at(x) != colour_at(x + gamma) away
    from switch points.
    """
    if not 0.0 <= gamma < TWO_PI:
        gamma = canonical_angle(gamma)
    f = full_switch_set(c)
    x = canonical_angle(x)
    t = x + gamma
    if t < TWO_PI:
        count = bisect_right(f, t) - bisect_right(f, x)
    else:
        count = (len(f) - bisect_right(f, x)) + bisect_right(f, t - TWO_PI)
    return "odd" if count % 2 else "even"


@dataclass(frozen=True)
class Mixture:
    """Convex combination of colourings; the full classical model class."""

    components: tuple[tuple[float, Colouring], ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValidationError("mixture needs at least one component")
        total = 0.0
        for w, c in self.components:
            if w < ANGLE_TOL:
                raise ValidationError(f"mixture weight {w!r} is not positive")
            if w > 1.0:
                raise ValidationError(f"mixture weight {w!r} exceeds 1")
            if not isinstance(c, Colouring):
                raise ValidationError("mixture component is not a Colouring")
            total += w
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"mixture weights sum to {total!r}, not 1")


def as_mixture(model: Colouring | Mixture) -> Mixture:
    """Wrap a bare colouring as a single-component mixture."""
    if isinstance(model, Mixture):
        return model
    return Mixture(((1.0, model),))


# JSON-friendly dict forms: {"theta": [...]} for a colouring,
# {"components": [{"w": 0.5, "theta": [...]}, ...]} for a mixture.

def colouring_to_dict(c: Colouring) -> dict:
    return {"theta": list(c.switches)}


def mixture_to_dict(m: Mixture) -> dict:
    return {"components": [{"w": w, "theta": list(c.switches)} for w, c in m.components]}


def model_from_dict(d: dict) -> Colouring | Mixture:
    """Parse either dict form; raises ValidationError on malformed input."""
    if "theta" in d:
        return new_colouring(d["theta"])
    if "components" in d:
        comps = tuple(
            (float(entry["w"]), new_colouring(entry["theta"]))
            for entry in d["components"]
        )
        return Mixture(comps)
    raise ValidationError("model dict needs a 'theta' or 'components' key")

"""Validated constructors for the five oscillator families, plus the
physical-to-dimensionless parameter map for the Morse oscillator.

Constructors are pure and deterministic; invalid parameter combinations are
rejected eagerly with a message naming the violated condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError
from .models import (
    GENERALIZED_KRATZER_FUES,
    GENERALIZED_MORSE,
    HARMONIC,
    KRATZER_FUES,
    WEI_HUA,
    HarmonicParams,
    KratzerFuesParams,
    MorseParams,
    OscillatorModel,
    WeiHuaParams,
)

INF = math.inf


def make_harmonic() -> OscillatorModel:
    """Harmonic oscillator: x(q) = -q, V - E0 = (q^2 - 1)/2, E0 = 1/2."""
    return OscillatorModel(
        family=HARMONIC,
        params=HarmonicParams(),
        q_lower=-INF,
        q_upper=INF,
        e0=0.5,
        d_const=None,
    )


def make_generalized_morse(s: float, x_e: float) -> OscillatorModel:
    """Generalized Morse oscillator with anharmonicity constant x_e.

    Derived constants: c0 = s - x_e and c1 = sqrt(2 x_e). Requires x_e > 0 and
    s > x_e so that c0 > 0 and the ground state decays at +infinity. The s = 1
    case is the standard Morse oscillator.
    """
    s = float(s)
    x_e = float(x_e)
    if not (x_e > 0.0):
        raise InvalidParameterError(f"x_e must be positive, got {x_e!r}")
    if not (s > x_e):
        raise InvalidParameterError(f"s must exceed x_e, got s={s!r}, x_e={x_e!r}")
    c1 = math.sqrt(2.0 * x_e)
    c0 = s - x_e
    return OscillatorModel(
        family=GENERALIZED_MORSE,
        params=MorseParams(s=s, x_e=x_e, c0=c0, c1=c1),
        q_lower=-INF,
        q_upper=INF,
        e0=0.5 * (s - 0.5 * x_e),
        d_const=s * s / (4.0 * x_e),
    )


def make_wei_hua(c0: float, c1: float, c2: float) -> OscillatorModel:
    """Wei Hua oscillator from the parabolic generating-series coefficients.

    Stores the derived constants W, B, C, c, q0 and the potential constants
    2D = (1 - c2) W^2 and 2E0 = (1 - c2) W^2 - c0^2/c1^2. Only triples with a
    real q0 (B/W - C > 0) and a positive commutator (c/c2 > 0) are
    constructible. The domain is (ln(C)/c1, inf) when c > 0 and the whole line
    otherwise.
    """
    c0 = float(c0)
    c1 = float(c1)
    c2 = float(c2)
    if not (c1 > 0.0):
        raise InvalidParameterError(f"c1 must be positive, got {c1!r}")
    if c2 == 0.0 or c2 == 1.0:
        raise InvalidParameterError(f"c2 must not be 0 or 1, got {c2!r}")
    if c1 * c1 + c2 == 0.0:
        raise InvalidParameterError("c1^2 + c2 must be nonzero")
    if 2.0 * c0 + c1 * c1 == 0.0:
        raise InvalidParameterError("W vanishes: 2 c0 + c1^2 must be nonzero")
    w = (2.0 * c0 + c1 * c1) / (2.0 * c1 * (1.0 - c2))
    b = c1 / (c1 * c1 + c2)
    big_c = c2 / (c1 * c1 + c2)
    split = b / w - big_c
    if not (split > 0.0):
        raise InvalidParameterError(
            f"B/W - C = {split!r} must be positive (q0 undefined otherwise)"
        )
    c = big_c / split
    q0 = math.log(split) / c1
    if not (c / c2 > 0.0):
        raise InvalidParameterError(f"c/c2 = {c / c2!r} must be positive")
    two_d = (1.0 - c2) * w * w
    two_e0 = two_d - (c0 / c1) ** 2
    q_lower = math.log(big_c) / c1 if c > 0.0 else -INF
    return OscillatorModel(
        family=WEI_HUA,
        params=WeiHuaParams(
            c0=c0, c1=c1, c2=c2, w=w, b=b, big_c=big_c, c=c, q0=q0,
            pot_num=b / w + big_c, two_d=two_d, two_e0=two_e0,
        ),
        q_lower=q_lower,
        q_upper=INF,
        e0=0.5 * two_e0,
        d_const=0.5 * two_d,
    )


def make_generalized_kratzer_fues(c0: float, c1: float) -> OscillatorModel:
    """Generalized Kratzer-Fues oscillator on the half line (-1/c1, inf).

    Requires 0 < c1 < 1 (so 1 - c1^2 > 0 and D, E0 are positive) and c0 > 0.
    The shape parameter is s = (1 - c0 - c1^2)/c0; c0 = 1 - c1^2 gives the
    plain Kratzer-Fues oscillator (s = 0).
    """
    return _make_kratzer(GENERALIZED_KRATZER_FUES, c0, c1)


def make_kratzer_fues(c1: float) -> OscillatorModel:
    """Kratzer-Fues oscillator: the c0 = 1 - c1^2 special case (s = 0)."""
    c1 = float(c1)
    if not (0.0 < c1 < 1.0):
        raise InvalidParameterError(f"c1 must satisfy 0 < c1 < 1, got {c1!r}")
    return _make_kratzer(KRATZER_FUES, 1.0 - c1 * c1, c1)


def _make_kratzer(family: str, c0: float, c1: float) -> OscillatorModel:
    c0 = float(c0)
    c1 = float(c1)
    if not (0.0 < c1 < 1.0):
        raise InvalidParameterError(f"c1 must satisfy 0 < c1 < 1, got {c1!r}")
    if not (c0 > 0.0):
        raise InvalidParameterError(f"c0 must be positive, got {c0!r}")
    one_m = 1.0 - c1 * c1
    s = (1.0 - c0 - c1 * c1) / c0
    two_d = c0 * c0 / (c1 * c1 * one_m)
    two_e0 = c0 * c0 / one_m
    return OscillatorModel(
        family=family,
        params=KratzerFuesParams(c0=c0, c1=c1, s=s, two_d=two_d, two_e0=two_e0),
        q_lower=-1.0 / c1,
        q_upper=INF,
        e0=0.5 * two_e0,
        d_const=0.5 * two_d,
    )


@dataclass(frozen=True)
class PhysicalMorseParams:
    """Physical Morse parameters in any consistent unit system."""

    d_e: float    # dissociation energy
    a: float      # range parameter (inverse length)
    m: float      # reduced mass
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("d_e", "a", "m", "hbar"):
            if not (getattr(self, name) > 0.0):
                raise InvalidParameterError(f"{name} must be positive")


def morse_dimensionless_from_physical(p: PhysicalMorseParams) -> tuple[float, float]:
    """Map physical Morse parameters to (x_e, omega_e).

    omega_e = a sqrt(2 D_e / m) is the vibrational frequency and
    x_e = hbar omega_e / (4 D_e) the anharmonicity constant. Downstream
    construction with s = 1 additionally needs x_e < 1.
    """
    omega_e = p.a * math.sqrt(2.0 * p.d_e / p.m)
    x_e = p.hbar * omega_e / (4.0 * p.d_e)
    return x_e, omega_e

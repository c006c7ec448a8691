"""Initial states emitted by the photon-pair sources.

The main source is a crystal pumped twice by the same pulse: a pair can be
created into the upper spatial modes (a1, b1) or, with relative amplitude
``r`` and phase ``phi``, into the lower ones (a2, b2).  Both passes emit
polarization-entangled pairs, so the two- and four-photon components carry
spatial as well as polarization entanglement.  For comparison there is also
the product state of two independent polarization-entangled pairs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .fock import Mode, PureState, SpatialMode, create, vacuum


class SourceKind(Enum):
    SPATIALLY_ENTANGLED = "spatially-entangled"
    TWO_INDEPENDENT_PAIRS = "two-independent-pairs"


@dataclass(frozen=True)
class SourceParams:
    """Source configuration.

    ``r`` is the relative amplitude of emission into the lower spatial modes
    (r = 1 means both passes are balanced), ``phi`` the phase between the two
    emission possibilities.  ``pairs`` selects the post-selected photon-number
    component: 1 pair (two photons) or 2 pairs (four photons).
    """

    r: float = 1.0
    phi: float = 0.0
    pairs: int = 1
    kind: SourceKind = SourceKind.SPATIALLY_ENTANGLED

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must be in [0, 1], got {self.r}")
        if self.pairs not in (1, 2):
            raise ValueError(f"pairs must be 1 or 2, got {self.pairs}")
        object.__setattr__(self, "phi", self.phi % (2.0 * math.pi))
        if self.kind is SourceKind.TWO_INDEPENDENT_PAIRS and self.pairs != 2:
            raise ValueError("independent-pairs source always emits 2 pairs")


def _emit_pair(state: PureState, upper: complex, lower: complex) -> PureState:
    """One application of the coherent pair-creation operator.

    Adds one photon pair, as a superposition of the four creation channels
    (upper/lower spatial mode, H/V polarization) with the given weights.
    """
    out = create(Mode.B1H, create(Mode.A1H, state)).scaled(upper)
    out = out + create(Mode.B1V, create(Mode.A1V, state)).scaled(upper)
    out = out + create(Mode.B2H, create(Mode.A2H, state)).scaled(lower)
    out = out + create(Mode.B2V, create(Mode.A2V, state)).scaled(lower)
    return out


def spatially_entangled_state(params: SourceParams) -> PureState:
    """Normalized n-pair state of the two-pass source.

    For r = 1, phi = 0 the single-pair state is an equal superposition of
    four kets (two ebits: one polarization, one spatial), and the two-pair
    state has ten equal-weight Schmidt terms.
    """
    if params.kind is not SourceKind.SPATIALLY_ENTANGLED:
        raise ValueError(f"wrong source kind: {params.kind}")
    lower = params.r * cmath.exp(1j * params.phi)
    state = vacuum()
    for _ in range(params.pairs):
        state = _emit_pair(state, 1.0, lower)
    return state.normalized()


def independent_pairs_state() -> PureState:
    """Two independent polarization-entangled pairs, upper and lower.

    Four kets of amplitude 1/2: one photon in each spatial mode, with the
    upper and lower pair each in the (HH + VV)/sqrt(2) polarization state.
    """
    state = _emit_pair(vacuum(), 1.0, 0.0)
    state = _emit_pair(state, 0.0, 1.0)
    return state.normalized()


#: spatial modes the noise channels act on by default (Alice's long arm)
DEFAULT_CHANNEL_TARGETS = (SpatialMode.A1, SpatialMode.A2)

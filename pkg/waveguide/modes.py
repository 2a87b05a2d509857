import enum
from typing import Tuple, Union

__all__ = ("ModeId", "MODES", "FORWARD", "BACKWARD", "parse_modes", "modes_label", "swap_signal_idler_mode")


class ModeId(str, enum.Enum):
    """The six guided modes: signal/idler/pump, each forward (F) and backward (B) propagating."""

    SF = "sF"
    IF = "iF"
    PF = "pF"
    SB = "sB"
    IB = "iB"
    PB = "pB"

    def __str__(self):
        return self.value

    @property
    def field(self) -> str:
        """s, i or p."""
        return self.value[0]

    @property
    def direction(self) -> str:
        """F or B."""
        return self.value[1]

    @property
    def position(self) -> int:
        """Position in the canonical order (sF, iF, pF, sB, iB, pB)."""
        return _ORDER[self]

    @property
    def slot(self) -> int:
        """Row of the operator in the interleaved (operator, conjugate) stacked vector."""
        return 2 * _ORDER[self]

    @classmethod
    def parse(cls, label: Union[str, "ModeId"]) -> "ModeId":
        if isinstance(label, ModeId):
            return label
        try:
            return cls(label.strip())
        except ValueError:
            raise ValueError(f"unknown mode {label!r}, expected one of {', '.join(m.value for m in cls)}")


MODES = tuple(ModeId)
_ORDER = {mode: i for i, mode in enumerate(MODES)}
FORWARD = MODES[:3]
BACKWARD = MODES[3:]

_SWAP = {"s": "i", "i": "s", "p": "p"}


def parse_modes(label: Union[str, ModeId, Tuple]) -> Tuple[ModeId, ...]:
    """Parses a mode or compound-mode label, e.g. ``"sF"`` or ``"sF,iB"``."""
    if isinstance(label, ModeId):
        return (label,)
    if isinstance(label, str):
        parts = [p for p in label.split(",") if p.strip()]
    else:
        parts = list(label)
    modes = tuple(ModeId.parse(p) for p in parts)
    if len(modes) not in (1, 2):
        raise ValueError(f"expected one mode or a pair of modes, got {label!r}")
    if len(modes) == 2 and modes[0] == modes[1]:
        raise ValueError(f"compound mode needs two distinct modes, got {label!r}")
    return modes


def modes_label(modes: Tuple[ModeId, ...]) -> str:
    return ",".join(m.value for m in modes)


def swap_signal_idler_mode(mode: ModeId) -> ModeId:
    return ModeId(_SWAP[mode.field] + mode.direction)

"""
Conversions between the scaled units used internally and SI.

Internal units: length 1 mm, classical amplitudes 10^6 V/m, correction amplitudes 10 V/m, couplings 1/mm.
"""

from waveguide.errors import UnknownUnit

# tag -> (dimension, size of one unit in SI)
UNITS = {
    "mm": ("length", 1e-3),
    "m": ("length", 1.0),
    "1e6 V/m": ("field", 1e6),
    "10 V/m": ("field", 10.0),
    "V/m": ("field", 1.0),
    "1/mm": ("wavenumber", 1e3),
    "1/m": ("wavenumber", 1.0),
}

ALIASES = {
    "10^6 V/m": "1e6 V/m",
    "MV/m": "1e6 V/m",
    "mean": "1e6 V/m",
    "correction": "10 V/m",
    "mm^-1": "1/mm",
    "m^-1": "1/m",
}

SI = {"length": "m", "field": "V/m", "wavenumber": "1/m"}


def _lookup(tag: str):
    tag = ALIASES.get(tag, tag)
    try:
        return tag, UNITS[tag]
    except KeyError:
        raise UnknownUnit(f"unknown unit {tag!r}, expected one of {', '.join(list(UNITS) + ['SI'])}")


def rescale_units(value, from_unit: str, to_unit: str):
    """
    Rescales *value* from one unit to another of the same dimension.

    ``"SI"`` on either side stands for the SI unit of the other side's dimension, so ``rescale_units(2, "mm", "SI")``
    gives metres. Works on scalars and numpy arrays alike.
    """
    if from_unit == "SI" and to_unit == "SI":
        return value
    if from_unit == "SI":
        _, (dimension, to_size) = _lookup(to_unit)
        return value / to_size
    if to_unit == "SI":
        _, (dimension, from_size) = _lookup(from_unit)
        return value * from_size

    from_tag, (from_dim, from_size) = _lookup(from_unit)
    to_tag, (to_dim, to_size) = _lookup(to_unit)
    if from_dim != to_dim:
        raise UnknownUnit(f"cannot convert {from_tag} ({from_dim}) to {to_tag} ({to_dim})")
    return value * from_size / to_size

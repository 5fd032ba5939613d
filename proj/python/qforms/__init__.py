"""Exact quadratic-form analysis (see the _qforms extension for details)."""

from ._qforms import (  # noqa: F401
    analyze,
    aut,
    factorize,
    first_witt_index,
    hilbert_symbol,
    hopf,
    isotropy,
    parse_polynomial,
    pfister_build,
    pfister_multiply,
    pfister_neighbor,
    product_map,
    ruled,
    sphere_ruled,
    square_class,
    verify,
    witt,
    __version__,
)

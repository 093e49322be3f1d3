"""Exact p-adic trace between Kummer local systems on G_m and depth-n characters of Z_p^x."""

from .algebra import FqElem, FqField, ModInt, crt, discrete_log, frobenius, make_field, norm, trace
from .characters import (
    CyclotomicValue,
    DepthNCharacter,
    char_depth,
    char_eval,
    char_inv,
    char_mul,
    enumerate_chars,
)
from .kummer import (
    KummerContext,
    MonomialMap,
    build_context,
    cartesian_check,
    correspondence_table,
    deck_transport,
    geometrize,
    kernel_structure,
    padic_trace,
    verify_commutes,
)
from .lang import LangPoint, deck_translation, lang_fiber, lang_map, trace_function
from .padic import PadicUnit, coords_to_unit, pexp, plog, teichmuller_lift, unit_coords
from .witt import (
    WittPolyCache,
    WittRing,
    WittVector,
    frobenius_W,
    ghost,
    greenberg_split,
    teichmuller_witt,
    verschiebung,
    witt_add,
    witt_mul,
    witt_polynomials,
    witt_trace,
    wittFp_to_zpn,
    zpn_to_wittFp,
)

__version__ = "0.1.0"

from ._gfperiod import (
    MathError,
    classify_word,
    configure,
    gf_graph,
    gf_seq,
    integrate_plane,
    mzv_eval,
    parse,
    period_graph,
    period_seq,
    period_zigzag,
    reduce,
    sv_eval,
    svmp_basis,
)

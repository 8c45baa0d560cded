"""Security instrumentation: square-code distinguisher experiments, the
block-structured information-set-decoding cost model and toy attack, and
the key-size catalog checks."""

from .schur import (SquareReport, DistinguisherReport, schur_product,
                    schur_matrix, schur_row_count, square_dim,
                    distinguisher_experiment)
from .bcode import (build_bcode_parity, bcode_generator,
                    interleave_permutation, subfield_kernel)
from .isd import (IsdCostReport, isd_estimate, isd_estimate_grid,
                  stern_baseline, isd_attack, attack_success_count)
from .tables import (key_size_bits, reproduce_tables, TableRowReport,
                     TABLE_M3, TABLE_M4)

__all__ = [
    "SquareReport", "DistinguisherReport", "schur_product", "schur_matrix",
    "schur_row_count", "square_dim", "distinguisher_experiment",
    "build_bcode_parity", "bcode_generator", "interleave_permutation",
    "subfield_kernel",
    "IsdCostReport", "isd_estimate", "isd_estimate_grid", "stern_baseline",
    "isd_attack", "attack_success_count",
    "key_size_bits", "reproduce_tables", "TableRowReport",
    "TABLE_M3", "TABLE_M4",
]

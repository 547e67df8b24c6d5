"""Tilings of the binary Hamming cube and the TS-metrics that make them perfect codes."""

from .combinatorial_metric import (CoveringFamily, covering_product, f_weight, f_weight_table,
                                   recognize_radius1_covering, saturate_covering)
from .hypercube import (Path, Subset, Vector, gf2_rank, hamming_weight, interval,
                        is_convex_polyhedromino, is_polyhedromino, support_subseteq)
from .perfect_codes import (CatalogEntry, PerfectCodeCertificate, SmallBall, classify_small_ball,
                            classify_tile8, dn_perfect_metric, is_support_closed, is_ts_ball,
                            load_catalog, small_ball_poset, support_closure_witness,
                            verify_perfect)
from .poset_metric import (Poset, find_poset_ball, ideal, p_weight, p_weight_table,
                           poset_from_relations)
from .tilings import (Permutation, Tiling, canonical_form, concat_tiling, d_n_tile,
                      extend_tiling, find_complement, is_tiling_partition, is_tiling_sumset,
                      permutation_apply, trivial_tiling)
from .weights import (Ball, DistanceMatrix, WeightTable, ball, complete_ball_to_ts_weight,
                      conditional_sum_weight, d_max_weight, decoding_equivalent, extend_weight,
                      hamming_table, matrix_from_weight, validate_ts_weight)

__version__ = "0.1.0"

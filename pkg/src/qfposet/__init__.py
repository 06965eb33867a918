"""Posets on partitions into distinct quasifibonacci numbers."""
from .coeffs import (
    CoeffTable,
    SignTriple,
    coeff_recursive,
    coeff_recursive_even,
    coeff_recursive_odd,
    same_sign_check_odd,
    series_oracle,
    sign_sum,
)
from .kernels import USE_NUMBA
from .partitions import (
    PartitionSet,
    Rep,
    add_reps,
    complement,
    enumerate_partitions,
    eta,
    partition_counts,
    sub_reps,
    tau,
)
from .poset import (
    GluedPoset,
    PosetDiagram,
    RecursionCase,
    build_poset,
    dual_check,
    glue,
    is_lattice,
    is_leq,
    is_modular,
    join,
    max_element,
    meet,
    min_element,
    recursion_case,
    shift_poset,
    split_UD,
    to_dot,
    verify_recursion,
)
from .qfseq import QFSequence, Thresholds, check_arithmetic_lemma, fibonacci, lucas, new_sequence

__version__ = "0.1.0"

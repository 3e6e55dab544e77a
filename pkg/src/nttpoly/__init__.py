"""Number Theoretic Transforms and polynomial multiplication over Z_q[x]/(x^n +- 1)."""
from .conv import (
    Polynomial,
    cyclic_convolution,
    cyclic_convolution_by_reduction,
    linear_convolution,
    negacyclic_convolution,
)
from .errors import NttError
from .ntt_fast import (
    ButterflyCounter,
    TwiddleTable,
    bit_reverse,
    bitrev_permute,
    intt_gs,
    intt_gs_cyclic,
    ntt_ct,
    ntt_ct_cyclic,
    precompute_cyclic_tables,
    precompute_tables,
)
from .ntt_ref import NttVector, Order, Root, intt_naive, intt_psi_naive, ntt_naive, ntt_psi_naive
from .polymul import (
    TransformLedger,
    baseline_ledger,
    matvec_ntt,
    mul_cyclic,
    mul_negacyclic,
    pointwise_mul,
    sum_of_products,
    verify_crt_factorization,
)
from .zq import (
    Factorization,
    Wrap,
    ZqContext,
    factorize,
    find_omega,
    find_psi,
    is_nwc_friendly,
    is_pwc_friendly,
    make_context,
    mod_add,
    mod_inv,
    mod_pow,
)

__version__ = "0.1.0"

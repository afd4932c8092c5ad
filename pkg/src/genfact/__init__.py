"""Exact arithmetic for generalized factorial products, their convergent
rational generating functions, the congruences those induce, and the
primality characterizations built from them."""

from .core import (
    DomainError,
    FactorialParams,
    NonInvertibleError,
    ResourceGuardError,
    alpha_factorial,
    binomial,
    double_factorial,
    factorial,
    falling_factorial,
    generalized_product,
    gould_polynomial,
    pochhammer,
)
from .report import CongruenceReport, report_from_dict, report_to_dict
from .triangles import (
    alpha_factorial_coeff,
    fcf2,
    stirling1,
    stirling2,
    verify_alpha_expansion,
)
from .polyseries import (
    Poly1,
    Poly3,
    Series,
    poly3_reduce,
    poly_mod_reduce_substitute,
    series_of_rational,
)
from .convergents import (
    ConvergentPair,
    chn_multisum,
    chn_pochhammer_form,
    chn_product_form,
    convergent_pair,
    convergent_series,
    fp_poly,
    fq_poly,
    laguerre_identity_check,
)
from .congruences import (
    alpha_fact_congruence,
    alpha_fact_exact_sums,
    central_binomial_semi_poly,
    dbl_fact_congruence,
    dbl_fact_triple_sum,
    multiple_sum_expansion,
    prop1_exact,
    prop1_mod_h,
    prop1_mod_h_alpha_t,
    riordan_check,
    single_fact_lemma_sum,
    single_fact_triple_sum,
    single_fact_via_dblfact,
)
from .harmonic import (
    fcf_harmonic_identity,
    harmonic,
    harmonic_alpha,
    sigma_identity,
    stirling_harmonic_identity,
    wolstenholme_stirling_check,
)
from .primes import (
    CLEMENT,
    SP_TRIPLE,
    WILSON,
    OmegaParams,
    PairParams,
    clement_check,
    f_omega,
    f_omega_conjecture_suite,
    is_prime,
    n2plus1_check,
    pair_congruence,
    power_mod_product,
    pythagorean_prime_check,
    scan,
    sexy_triplet_check,
    special_prime_check,
    three_t_plus_one_check,
    wilson_check,
    wilson_variants,
)

__version__ = "0.1.0"

"""Achievable rates of vector channels observed through one-bit quantizers.

Exact mutual informations by support enumeration, second-order low-SNR
expansions with and without channel knowledge, non-coherent block-fading
rates, and a low-SNR upper bound for delay-spread channels, all sharing
one split-view numerical core.
"""

__version__ = "0.1.0"

from .numcore import (
    circ_product,
    split,
    unsplit,
    split_pnorm,
    nondiag,
    diagpart,
    std_normal_cdf,
    binary_entropy,
    gaussian_expectation,
    convert_units,
)
from .constellations import (
    DiscreteInputDistribution,
    MomentSummary,
    qpsk_iid,
    moments,
    is_proper,
    pushforward,
)
from .channel import (
    sign_patterns,
    cond_prob,
    output_pmf,
    exact_mi_perfect_csi,
    exact_sign_entropy,
    mc_ergodic_mi,
    EnumerationCapError,
)
from .lowsnr import (
    QuadraticExpansion,
    entropy_expansion,
    conditional_entropy_expansion,
    mi_expansion_perfect_csi,
    mi_expansion_unquantized,
    mi_expansion_ind_inputs,
    capacity_qpsk_2nd,
    ergodic_capacity_1bit,
    ergodic_capacity_unquantized,
    dimension_tradeoff,
    mi_expansion_statistical_csi,
    block_siso_operator,
    iid_block_mimo_expansions,
)
from .blockfading import (
    orthant_factor,
    qpsk_rate,
    qpsk_rate_T2_closed,
    qpsk_rate_T3_closed,
    coherent_rayleigh_qpsk,
    awgn_1bit_capacity,
    shannon_capacity,
    se_ee_point,
    training_rate,
    exact_stat_csi_mi_T2,
)
from .delayspread import (
    FadingCorrelationModel,
    LowSnrBound,
    zeta,
    chi,
    upper_bound,
    bound_value,
    iid_rate,
    fig9_curve,
)

"""Exact truncated q-expansions of p-adic Hilbert modular forms over a
real quadratic field, with the operator algebra, spectral data, Euler
factors, symbolic identity checks and weight-family specializations."""

from .quadfield import (QuadField, QuadElem, PrimeSplit, QuadFieldError,
                        make_field, split_prime, enumerate_totally_positive,
                        pi_valuation, pi_conj_valuation, trace, norm,
                        conjugate, is_totally_positive)
from .padic import (PadicNum, QuadExtNum, RootPair, PadicError,
                    PrecisionError, hensel_root, teichmuller, hecke_roots,
                    embed, embed_conj, val_fraction)
from .qexp import (HilbertQExp, ModularQExp, QExpError, BoundError,
                   make_hilbert_qexp, make_modular_qexp, add, scale, sub,
                   mq_add, mq_scale, mq_sub, v_pi, v_pi_prime, v_p, u_pi,
                   u_pi_prime, u_p, mq_v_p, mq_u_p, hecke_t_pi,
                   hecke_t_pi_prime, t_p, deplete_pi, deplete_pi_prime,
                   deplete_p, theta, theta_prime, theta_inverse,
                   theta_prime_inverse, restrict, e_ord_approx,
                   make_formal_eigenform, PrimitiveVector, primitive_vector,
                   aj_integrand, kernel_lemma_check)
from .spectral import (SpectralData, OrdinaryData, SpectralError,
                       spectral_data, ordinary_data, slope_of,
                       stabilize_modular, stabilize_hilbert,
                       q_f_polynomial, p_f_polynomial, euler_E0, euler_E1,
                       euler_E, AJScalars, aj_scalar, ramanujan_check)
from .symbolic import (LaurentPoly, GroupAlgebraElem,
                       verify_euler_summation, scholl_idempotent,
                       scholl_sym_part, scholl_inv_part, scholl_check,
                       random_expansion, verify_operator_identities)
from .family import (FamilyError, theta_bound, LambdaCoeff, constant_coeff,
                     HilbertFamily, LambdaH, build_lambda_h, specialize_h,
                     hida_stabilization_identity, lp_scalar_assembly)

__version__ = "0.1.0"

mod bitset;
mod finite;
mod ideal;

pub use bitset::ElemSet;
pub use finite::{ring_from_descriptor, FiniteRing, RingDescriptor, MAX_RING_ORDER};
pub use ideal::{
    enumerate_ideals, enumerate_ideals_bounded, enumerate_ideals_generic,
    enumerate_maximal_ideals, enumerate_prime_ideals, ideal_generated, is_pm_ring,
    is_prime_ideal, is_principal, is_semiprimitive, jacobson_radical, principal_ideal,
    RingIdeal, DEFAULT_IDEAL_BOUND,
};

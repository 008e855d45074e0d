//! Finite categories with explicit tables: premonoidal structure on them,
//! set-valued bimodules, coends and ends, and the constructions that sit on
//! top (composition, promonads, strengths, convolution).

pub mod cat;
pub mod closed;
pub mod compose;
pub mod day;
pub mod funny;
pub mod lan;
pub mod mon;
pub mod opticfin;
pub mod presheaf;
pub mod proaction;
pub mod prof;
pub mod promonad;
pub mod promonoidal;
pub mod tambara;
pub mod writer;

pub use cat::{
    discrete, make_fincat, monoid_cat, product, same_cat, terminal, walking_arrow, Arr, ArrowData,
    FinCat, FinCatData, IooFunctor, Monoid, Obj, ProductCat,
};
pub use closed::{closed_hom, closure_check, day_tensor, ClosedHom, ClosureReport, DayTensor};
pub use compose::{
    compose_profunctors, coyoneda_check, v2_compose, v2_coend, ComposedProf, V2Coend, V2Profunctor,
};
pub use day::{day_assoc_check, day_convolve, day_unit, day_unit_check, DayProf, DayRaw};
pub use funny::{funny_tensor, funny_word_compose, FunnyTensor, FunnyWord, Letter};
pub use lan::{lan_extend, restrict, theorem5_check, LanPresheaf, Theorem5Report};
pub use mon::{monoid_mon, MonStructure};
pub use opticfin::{
    comb_coend, comb_profunctor, eq4_two_ways, optic_hom_coend, CombHom, CombRaw, Eq4Report,
    OpticCat,
};
pub use presheaf::{nat_presheaves, Presheaf};
pub use proaction::{
    canonical_proactions, proaction_square_check, representable_embedding, ProactionReport,
};
pub use prof::{
    coend, constant_profunctor, end_, hom_profunctor, pair_coend, CoendResult, FinProfunctor,
    PairCoend, UnionFind,
};
pub use promonad::{kleisli_check, promonad_from_ioo, KleisliReport, Promonad};
pub use promonoidal::{
    canonical_prostrength, prostrength_check, representable, Promonoidal, ProstrengthReport,
};
pub use tambara::{tambara_check, whisker_strengths, Strengths, TambaraReport};
pub use writer::{identity_effectful, make_writer_effectful, Effectful, WriterEffectful};

//! `Der_c(G,(A,mu))`, `H^1(G,(A,mu))`, the plain `H^1(G,A)` and the
//! structural results relating them.

pub mod classes;
pub mod crossed;
pub mod der;
pub mod theorems;

pub use classes::{
    bar_h1, compute_h1, plain_h1, plain_h1_of_a, plain_h1_of_r, twist, ClassMap, ClassSet, H1Set,
    PlainH1,
};
pub use crossed::{enumerate_crossed_homs, is_crossed_hom, CrossedHom};
pub use der::{
    der_group, der_inverse, enumerate_der, equivalent, is_compatible, is_der_pair, links_alpha,
    links_r, star_product, DerGroup, DerPair, Equivalence,
};
pub use theorems::*;

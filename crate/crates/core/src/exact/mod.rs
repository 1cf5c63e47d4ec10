//! Exact rational polyhedral cones.

pub mod cone;
pub mod face;
pub mod io;
pub mod lp;
pub mod pair;
pub mod random;
pub mod rational;

pub use cone::{
    cone_from_generators, conv_union, intersect, ConeH, ConeV, Membership, MembershipCertificate,
    ProperCone, ProperConeReport,
};
pub use face::{complementary_face, enumerate_faces, face_of, Face, FaceLattice};
pub use pair::ExactPair;
pub use rational::{Rational, RationalVector};

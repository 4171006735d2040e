//! Border apolarity tools: multigraded rings, exact linear algebra, apolar
//! ideals, monomial ideals, point configurations and a lower-bound
//! certifier for border ranks of monomial targets.

pub mod apolar;
pub mod certifier;
pub mod cli;
pub mod exactla;
pub mod monideal;
pub mod points;
pub mod ring;

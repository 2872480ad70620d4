//! Twisted Hall algebras of representation-directed bound quivers over prime
//! fields, and presentations of quantum groups attached to their unit forms.

pub mod cli;
pub mod gallery;
pub mod gf;
pub mod hall;
pub mod presentation;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod unit_form;

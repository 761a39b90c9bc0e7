use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the operators of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed formula text. `column` is 1-based.
    Syntax {
        column: usize,
        expected: Vec<&'static str>,
    },
    UnknownAtom(String),
    InvalidAtomName(String),
    DuplicateAtom(String),
    EmptyAlphabet,
    TooManyAtoms(usize),
    /// Two operands were built over different numbers of atoms.
    UniverseMismatch {
        left: usize,
        right: usize,
    },
    /// An explicit structuring element failed symmetry or reflexivity.
    InvalidStructuringElement(String),
    EmptyInput,
    EmptyBelief,
    EmptyProfile,
    EmptyConstraint,
    EmptyTheory,
    EmptyObservation,
    EmptyExplanans,
    InconsistentObservation,
    InconsistentExplanans,
    /// No world satisfying the constraint is reachable from every source.
    Unreachable,
    /// Variable-disjoint decomposition applied to parts sharing an atom.
    SharedVariables {
        first: usize,
        second: usize,
        atom: String,
    },
    /// Brute-force routine called beyond its supported alphabet size.
    ScaleExceeded {
        atoms: usize,
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { column, expected } => {
                write!(f, "syntax error at column {column}")?;
                if !expected.is_empty() {
                    write!(f, ", expected one of: ")?;
                    for (i, e) in expected.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            Error::UnknownAtom(a) => write!(f, "atom `{a}` is not in the alphabet"),
            Error::InvalidAtomName(a) => write!(f, "invalid atom name `{a}`"),
            Error::DuplicateAtom(a) => write!(f, "atom `{a}` listed twice"),
            Error::EmptyAlphabet => write!(f, "alphabet has no atoms"),
            Error::TooManyAtoms(n) => {
                write!(f, "{n} atoms exceed the limit of {}", crate::MAX_ATOMS)
            }
            Error::UniverseMismatch { left, right } => {
                write!(f, "operands range over {left} and {right} atoms")
            }
            Error::InvalidStructuringElement(msg) => {
                write!(f, "invalid structuring element: {msg}")
            }
            Error::EmptyInput => write!(f, "operator needs a consistent (nonempty) input"),
            Error::EmptyBelief => write!(f, "belief base is inconsistent"),
            Error::EmptyProfile => write!(f, "profile is empty or has an inconsistent member"),
            Error::EmptyConstraint => write!(f, "integrity constraint is inconsistent"),
            Error::EmptyTheory => write!(f, "background theory is inconsistent"),
            Error::EmptyObservation => write!(f, "observation is inconsistent"),
            Error::EmptyExplanans => write!(f, "candidate explanation is inconsistent"),
            Error::InconsistentObservation => {
                write!(f, "observation is inconsistent with the background theory")
            }
            Error::InconsistentExplanans => write!(f, "candidate explanation is inconsistent"),
            Error::Unreachable => {
                write!(
                    f,
                    "no constraint model is reachable by dilating every source"
                )
            }
            Error::SharedVariables {
                first,
                second,
                atom,
            } => {
                write!(f, "parts {first} and {second} share atom `{atom}`")
            }
            Error::ScaleExceeded { atoms, limit } => {
                write!(f, "{atoms} atoms exceed the brute-force limit of {limit}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

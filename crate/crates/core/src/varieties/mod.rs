//! Relatively free algebras of varieties, computed at bounded degree.

mod identity;
mod quotient;

use std::sync::{Arc, OnceLock};

pub use identity::{linearization_factor, multilinearize, partial_linearize, Identity};
pub use quotient::{default_truncation, Generation, QuotientSpace, VarietyPresentation};

use crate::error::Result;
use crate::freealg::{self, Element, Signature};

/// Where computations happen: the absolutely free algebra of a signature, or a
/// relatively free algebra given by a truncated quotient.
#[derive(Debug, Clone)]
pub struct Ambient {
    sig: Signature,
    quotient: Option<Arc<QuotientSpace>>,
    doubled: Arc<OnceLock<Result<Ambient>>>,
}

impl Ambient {
    pub fn free(sig: Signature) -> Self {
        Ambient {
            sig,
            quotient: None,
            doubled: Arc::default(),
        }
    }

    pub fn variety(quotient: QuotientSpace) -> Self {
        Ambient {
            sig: *quotient.signature(),
            quotient: Some(Arc::new(quotient)),
            doubled: Arc::default(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn num_generators(&self) -> usize {
        self.sig.num_generators
    }

    pub fn quotient(&self) -> Option<&QuotientSpace> {
        self.quotient.as_deref()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.quotient.as_ref().map(|q| q.truncation())
    }

    /// Normal form; the identity (after a signature check) in the free case.
    pub fn reduce(&self, a: &Element) -> Result<Element> {
        match &self.quotient {
            Some(q) => q.reduce(a),
            None => {
                a.check(&self.sig)?;
                Ok(a.clone())
            }
        }
    }

    pub fn bracket(&self, args: &[Element]) -> Result<Element> {
        let raw = freealg::bracket(&self.sig, args)?;
        match &self.quotient {
            Some(q) => q.reduce(&raw),
            None => Ok(raw),
        }
    }

    pub fn is_zero(&self, a: &Element) -> Result<bool> {
        Ok(self.reduce(a)?.is_zero())
    }

    /// The same kind of algebra on twice as many generators: `x_1..x_n` followed
    /// by `y_1..y_n`. Varieties keep their identities and truncation.
    pub fn doubled(&self) -> Result<Ambient> {
        self.doubled
            .get_or_init(|| {
                let n = self.sig.num_generators;
                match &self.quotient {
                    None => Ok(Ambient::free(self.sig.with_generators(2 * n))),
                    Some(q) => {
                        let pres = q.presentation().with_generators(2 * n);
                        Ok(Ambient::variety(QuotientSpace::new(pres, q.truncation())?))
                    }
                }
            })
            .clone()
    }

    /// Whether values from the two ambients may be combined.
    pub fn same_kind(&self, other: &Ambient) -> bool {
        self.sig == other.sig
            && match (&self.quotient, &other.quotient) {
                (None, None) => true,
                (Some(a), Some(b)) => Arc::ptr_eq(a, b),
                _ => false,
            }
    }
}

//! Exponent pairs and the A/B process algebra.
//!
//! An exponent pair (k, l) lives in the region 0 ≤ k ≤ 1/2 ≤ l ≤ 1, k ≤ l.
//! New pairs are produced from seeds by van der Corput's processes
//!
//! ```text
//!   A(k, l) = (k/(2k+2), (k+l+1)/(2k+2))
//!   B(k, l) = (l − 1/2, k + 1/2)
//! ```
//!
//! Seeds: the trivial pair (0, 1); Bourgain's pair (13/84, 55/84), valid only
//! with +ε on both coordinates; Heath-Brown's family HB(m) for m ≥ 3; and the
//! conjectural pair (0, 1/2) behind an explicit opt-in. Every pair carries its
//! derivation word so results can name their source and be replayed.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rational};

/// One symbol of a derivation word. Ordering is the tie-break order used by
/// the catalog and by best-bound queries: processes first, then seeds, with
/// Heath-Brown seeds ordered by their index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    A,
    B,
    Bourgain,
    HeathBrown(u32),
    Trivial,
    Conjectural,
}

impl Symbol {
    pub fn is_seed(self) -> bool {
        !matches!(self, Symbol::A | Symbol::B)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::A => write!(f, "A"),
            Symbol::B => write!(f, "B"),
            Symbol::Bourgain => write!(f, "bourgain"),
            Symbol::HeathBrown(m) => write!(f, "hb({m})"),
            Symbol::Trivial => write!(f, "trivial"),
            Symbol::Conjectural => write!(f, "conjectural"),
        }
    }
}

/// A derivation word: zero or more process symbols followed by one seed,
/// stored outermost-first (`BA(bourgain)` is `[B, A, Bourgain]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation(pub Vec<Symbol>);

impl Derivation {
    pub fn seed(seed: Symbol) -> Self {
        debug_assert!(seed.is_seed());
        Derivation(vec![seed])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn prefixed(&self, p: Symbol) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(p);
        v.extend_from_slice(&self.0);
        Derivation(v)
    }

    /// Re-executes the word from its seed; the result must reproduce the pair
    /// that carries this derivation.
    pub fn replay(&self) -> Result<ExponentPair> {
        let (seed, steps) = self
            .0
            .split_last()
            .ok_or(Error::BadDerivation(String::new(), "empty word"))?;
        let mut pair = match seed {
            Symbol::Bourgain => ExponentPair::bourgain(),
            Symbol::Trivial => ExponentPair::trivial(),
            Symbol::Conjectural => ExponentPair::conjectural(),
            Symbol::HeathBrown(m) => ExponentPair::heath_brown(*m)?,
            _ => return Err(Error::BadDerivation(self.to_string(), "word has no seed")),
        };
        for step in steps.iter().rev() {
            pair = match step {
                Symbol::A => pair.a_process(),
                Symbol::B => pair.b_process()?,
                _ => return Err(Error::BadDerivation(self.to_string(), "seed inside word")),
            };
        }
        Ok(pair)
    }

    /// Length-then-lexicographic order used for deterministic tie-breaks.
    pub fn rank(&self) -> (usize, &[Symbol]) {
        (self.0.len(), &self.0)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.split_last() {
            None => write!(f, "?"),
            Some((seed, [])) => write!(f, "{seed}"),
            Some((seed, steps)) => {
                for s in steps {
                    write!(f, "{s}")?;
                }
                write!(f, "({seed})")
            }
        }
    }
}

/// An exponent pair (k, l) with its ε-flag and derivation word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentPair {
    k: Rational,
    l: Rational,
    needs_eps: bool,
    derivation: Derivation,
}

impl ExponentPair {
    /// Validates 0 ≤ k ≤ 1/2 ≤ l ≤ 1 and k ≤ l.
    pub fn new(k: Rational, l: Rational, needs_eps: bool, derivation: Derivation) -> Result<Self> {
        let reason = if k < rat_int(0) {
            Some("k < 0")
        } else if k > rat(1, 2) {
            Some("k > 1/2")
        } else if l < rat(1, 2) {
            Some("l < 1/2")
        } else if l > rat_int(1) {
            Some("l > 1")
        } else if k > l {
            Some("k > l")
        } else {
            None
        };
        if let Some(reason) = reason {
            return Err(Error::InvalidPair {
                k: k.to_string(),
                l: l.to_string(),
                reason,
            });
        }
        Ok(ExponentPair {
            k,
            l,
            needs_eps,
            derivation,
        })
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn l(&self) -> &Rational {
        &self.l
    }

    pub fn needs_eps(&self) -> bool {
        self.needs_eps
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    /// Bourgain's pair (13/84 + ε, 55/84 + ε).
    pub fn bourgain() -> Self {
        ExponentPair {
            k: rat(13, 84),
            l: rat(55, 84),
            needs_eps: true,
            derivation: Derivation::seed(Symbol::Bourgain),
        }
    }

    /// The trivial pair (0, 1).
    pub fn trivial() -> Self {
        ExponentPair {
            k: rat_int(0),
            l: rat_int(1),
            needs_eps: false,
            derivation: Derivation::seed(Symbol::Trivial),
        }
    }

    /// The conjectural pair (ε, 1/2 + ε); only valid if the exponent-pairs
    /// conjecture holds, so catalogs exclude it unless explicitly enabled.
    pub fn conjectural() -> Self {
        ExponentPair {
            k: rat_int(0),
            l: rat(1, 2),
            needs_eps: true,
            derivation: Derivation::seed(Symbol::Conjectural),
        }
    }

    /// Heath-Brown's family, m ≥ 3:
    /// k = 2/((m−1)²(m+2)), l = 1 − (3m−2)/(m(m−1)(m+2)) + ε.
    pub fn heath_brown(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::OutOfRange(format!(
                "Heath-Brown index m must be >= 3, got {m}"
            )));
        }
        let m = i64::from(m);
        let k = rat(2, (m - 1) * (m - 1) * (m + 2));
        let l = rat_int(1) - rat(3 * m - 2, m * (m - 1) * (m + 2));
        Ok(ExponentPair {
            k,
            l,
            needs_eps: true,
            derivation: Derivation::seed(Symbol::HeathBrown(m as u32)),
        })
    }

    /// A-process: (k, l) ↦ (k/(2k+2), (k+l+1)/(2k+2)). Maps the valid region
    /// into itself, so the result needs no re-validation.
    pub fn a_process(&self) -> Self {
        let denom = rat_int(2) * &self.k + rat_int(2);
        let k = &self.k / &denom;
        let l = (&self.k + &self.l + rat_int(1)) / &denom;
        let pair = ExponentPair {
            k,
            l,
            needs_eps: self.needs_eps,
            derivation: self.derivation.prefixed(Symbol::A),
        };
        debug_assert!(pair.invariants_hold());
        pair
    }

    /// B-process: (k, l) ↦ (l − 1/2, k + 1/2). An involution on the valid
    /// region; the result is re-validated and rejected if it ever left it.
    pub fn b_process(&self) -> Result<Self> {
        let k = &self.l - rat(1, 2);
        let l = &self.k + rat(1, 2);
        ExponentPair::new(k, l, self.needs_eps, self.derivation.prefixed(Symbol::B))
    }

    fn invariants_hold(&self) -> bool {
        self.k >= rat_int(0)
            && self.k <= rat(1, 2)
            && self.l >= rat(1, 2)
            && self.l <= rat_int(1)
            && self.k <= self.l
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps = if self.needs_eps { " +eps" } else { "" };
        write!(f, "({}, {}){} = {}", self.k, self.l, eps, self.derivation)
    }
}

/// Catalog construction parameters.
#[derive(Debug, Clone, Copy)]
pub struct CatalogOptions {
    /// maximum number of A/B process applications over the Bourgain seed
    pub max_word_len: usize,
    /// include HB(m) for 3 ≤ m ≤ max_hb_m
    pub max_hb_m: u32,
    /// include the conjectural pair (0, 1/2)
    pub include_conjectural: bool,
}

impl Default for CatalogOptions {
    /// Word length 3 and HB up to m = 64 reproduce the published bound table;
    /// deeper words never improve the envelope (checked in tests, not assumed).
    fn default() -> Self {
        CatalogOptions {
            max_word_len: 3,
            max_hb_m: 64,
            include_conjectural: false,
        }
    }
}

/// Builds the pair catalog: the trivial pair, all A/B words of length up to
/// `max_word_len` applied to the Bourgain pair, the Heath-Brown family up to
/// `max_hb_m`, and optionally the conjectural pair. Deduplicated by (k, l),
/// keeping the shortest derivation word (then lexicographically first).
pub fn build_catalog(opts: &CatalogOptions) -> Vec<ExponentPair> {
    let mut catalog: Vec<ExponentPair> = Vec::new();
    let mut push = |pair: ExponentPair| {
        debug_assert!(pair.invariants_hold());
        match catalog.iter_mut().find(|p| p.k == pair.k && p.l == pair.l) {
            Some(existing) => {
                if pair.derivation.rank() < existing.derivation.rank() {
                    *existing = pair;
                }
            }
            None => catalog.push(pair),
        }
    };

    push(ExponentPair::trivial());

    // breadth-first over process words, A before B at each length
    let mut frontier = vec![ExponentPair::bourgain()];
    push(ExponentPair::bourgain());
    for _ in 0..opts.max_word_len {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for pair in &frontier {
            let a = pair.a_process();
            push(a.clone());
            next.push(a);
            if let Ok(b) = pair.b_process() {
                push(b.clone());
                next.push(b);
            }
        }
        frontier = next;
    }

    for m in 3..=opts.max_hb_m {
        push(ExponentPair::heath_brown(m).expect("m >= 3"));
    }

    if opts.include_conjectural {
        push(ExponentPair::conjectural());
    }

    catalog.sort_by(|a, b| a.derivation.rank().cmp(&b.derivation.rank()));
    catalog
}

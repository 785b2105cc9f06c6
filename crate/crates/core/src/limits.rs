//! Size guards shared by the engines.
//!
//! The vertex guards can be raised with the `LP_MAX_VERTICES` environment
//! variable. Raising them is at your own risk: the oracle is exponential in
//! the number of vertices. Vertex sets are stored in 64-bit masks, so no
//! override can go past 64.

use std::sync::OnceLock;

/// Hard ceiling imposed by the bitmask representation.
pub const MASK_BITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum poset size accepted by the parser and constructors.
    pub max_elements: usize,
    /// Maximum `n * |P|` for materializing the Stanley-Reisner complex.
    pub max_complex_vertices: usize,
    /// Maximum `n * |P|` for a full oracle Betti table.
    pub max_oracle_vertices: usize,
    /// Maximum number of faces enumerated for one homology computation.
    pub max_faces: usize,
    /// Maximum poset size for brute-force antichain enumeration.
    pub max_antichain_elements: usize,
    /// Practical guard for the strand engine on `|P|`.
    pub max_strand_elements: usize,
    /// Practical guard for the strand engine on `n`.
    pub max_strand_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 32,
            max_complex_vertices: 32,
            max_oracle_vertices: 24,
            max_faces: 1 << 24,
            max_antichain_elements: 20,
            max_strand_elements: 12,
            max_strand_n: 5,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var("LP_MAX_VERTICES")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            let v = v.min(MASK_BITS);
            limits.max_complex_vertices = v;
            limits.max_oracle_vertices = v;
        }
        limits
    }
}

/// Process-wide limits, read from the environment once.
pub fn limits() -> &'static Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    LIMITS.get_or_init(Limits::from_env)
}

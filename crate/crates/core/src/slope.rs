//! Exact arithmetic on arc slopes in the four-punctured sphere.
//!
//! Seams are parameterized by extended rationals `p/q`. The canonical
//! representative has `gcd(|p|, |q|) = 1`, `q >= 0`, and `p = 1` when
//! `q = 0` (the slope `1/0`).

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// An extended rational `p/q` in lowest terms with the projective sign
/// convention: denominator nonnegative, and `1/0` for the vertical slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    /// Canonical lowest-terms representative of `p/q`.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::ZeroSlope);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { num: p, den: q })
    }

    pub const INFINITY: Slope = Slope { num: 1, den: 0 };
    pub const ZERO: Slope = Slope { num: 0, den: 1 };

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// Primitive direction vector `(run, rise) = (q, p)`.
    pub fn direction(&self) -> (i64, i64) {
        (self.den, self.num)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("slope `{s}`: expected p/q")))?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("slope `{s}`: bad numerator")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("slope `{s}`: bad denominator")))?;
        Slope::new(p, q)
    }
}

/// Number of essential intersections of seams of slope `a` and `b` whose
/// endpoints lie on `k` common boundary components, `(|wz - xy| - k) / 2`.
pub fn essential_intersections(a: Slope, b: Slope, k: u8) -> Result<u64> {
    if k > 2 {
        return Err(Error::BadSharedPunctures(k));
    }
    let det = (a.num as i128 * b.den as i128 - a.den as i128 * b.num as i128).unsigned_abs();
    let k = k as u128;
    if det % 2 != k % 2 {
        return Err(Error::ParityViolation {
            a: a.to_string(),
            b: b.to_string(),
            k: k as u8,
        });
    }
    if det < k {
        // Same slope sharing both punctures: parallel or isotopic arcs,
        // outside the scope of the intersection formula.
        return Err(Error::ParallelArcs {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(((det - k) / 2) as u64)
}

/// The five homeomorphisms of the four-punctured sphere that act on slopes,
/// plus composites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomeoKind {
    /// Half twist exchanging the second puncture pair; `M = (1 1 / 0 1)`.
    Phi,
    /// Inverse half twist; `M = (1 -1 / 0 1)`.
    PhiInv,
    /// Horizontal reflection; `M = (-1 0 / 0 1)`. Orientation reversing.
    H,
    /// Reflection fixing the four `c_psi` arcs; `M = (-1 0 / 2 1)`.
    /// Orientation reversing.
    Psi,
    /// Hyperelliptic involution; identity on slopes, swaps every puncture
    /// with its partner.
    J,
    /// The second involution; identity on slopes.
    JPrime,
    Composite,
}

/// An element of `PGL_2(Z)` acting on slopes by column vectors, tagged with
/// the homeomorphism it came from and whether it preserves orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MappingMatrix {
    /// Row major `[[a, b], [c, d]]` acting on `(p, q)` as `(ap + bq, cp + dq)`.
    pub entries: [[i64; 2]; 2],
    pub kind: HomeoKind,
    /// `+1` orientation preserving, `-1` reversing.
    pub orientation: i8,
}

impl MappingMatrix {
    pub const PHI: MappingMatrix = MappingMatrix {
        entries: [[1, 1], [0, 1]],
        kind: HomeoKind::Phi,
        orientation: 1,
    };
    pub const PHI_INV: MappingMatrix = MappingMatrix {
        entries: [[1, -1], [0, 1]],
        kind: HomeoKind::PhiInv,
        orientation: 1,
    };
    pub const H: MappingMatrix = MappingMatrix {
        entries: [[-1, 0], [0, 1]],
        kind: HomeoKind::H,
        orientation: -1,
    };
    pub const PSI: MappingMatrix = MappingMatrix {
        entries: [[-1, 0], [2, 1]],
        kind: HomeoKind::Psi,
        orientation: -1,
    };
    pub const J: MappingMatrix = MappingMatrix {
        entries: [[1, 0], [0, 1]],
        kind: HomeoKind::J,
        orientation: 1,
    };
    pub const J_PRIME: MappingMatrix = MappingMatrix {
        entries: [[1, 0], [0, 1]],
        kind: HomeoKind::JPrime,
        orientation: 1,
    };

    pub fn det(&self) -> i64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn compose(&self, other: &MappingMatrix) -> MappingMatrix {
        let a = self.entries;
        let b = other.entries;
        let mut entries = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                entries[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        MappingMatrix {
            entries,
            kind: HomeoKind::Composite,
            orientation: self.orientation * other.orientation,
        }
    }
}

/// Column vector action followed by canonical normalization.
pub fn apply_matrix(m: &MappingMatrix, s: Slope) -> Slope {
    let p = m.entries[0][0] * s.num + m.entries[0][1] * s.den;
    let q = m.entries[1][0] * s.num + m.entries[1][1] * s.den;
    // |det| = 1 keeps (p, q) primitive and nonzero.
    Slope::new(p, q).expect("matrix action preserves nonzero primitive pairs")
}

/// Reduce `m/n` into the fundamental domain `-1/2 < m'/n <= 1/2` by powers
/// of `phi^{+-1}`; returns the reduced slope and the word applied to the
/// input, in application order.
pub fn reduce_to_fundamental(s: Slope) -> (Slope, Vec<MappingMatrix>) {
    if s.is_infinite() {
        return (s, Vec::new());
    }
    let n = s.den;
    let mut m = s.num;
    let mut word = Vec::new();
    // m' = m mod n shifted into (-n/2, n/2].
    while 2 * m > n {
        m -= n;
        word.push(MappingMatrix::PHI_INV);
    }
    while 2 * m <= -n {
        m += n;
        word.push(MappingMatrix::PHI);
    }
    (
        Slope::new(m, n).expect("shifts preserve primitivity"),
        word,
    )
}

/// Apply the inverse word in reverse, recovering the input of
/// [`reduce_to_fundamental`] from its output.
pub fn replay_word_inverse(s: Slope, word: &[MappingMatrix]) -> Slope {
    let mut s = s;
    for m in word.iter().rev() {
        let inv = match m.kind {
            HomeoKind::Phi => MappingMatrix::PHI_INV,
            HomeoKind::PhiInv => MappingMatrix::PHI,
            // The remaining generators are involutions.
            _ => *m,
        };
        s = apply_matrix(&inv, s);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(s(-1, 0), Slope::INFINITY);
        assert_eq!(s(-3, -4), s(3, 4));
        assert!(Slope::new(0, 0).is_err());
        assert_eq!(s(0, -5), Slope::ZERO);
    }

    #[test]
    fn intersection_formula() {
        // Lemma values: slope 1/0 against -1/3 sharing one puncture.
        assert_eq!(essential_intersections(s(1, 0), s(-1, 3), 1).unwrap(), 1);
        // Adjacent square sides meet only at the shared puncture.
        assert_eq!(essential_intersections(s(1, 0), s(0, 1), 1).unwrap(), 0);
        // -3/4 against 1/0 placed on disjoint puncture pairs.
        assert_eq!(essential_intersections(s(-3, 4), s(1, 0), 0).unwrap(), 2);
        // Parity violation: |det| even forces k even.
        assert!(essential_intersections(s(1, 0), s(-1, 2), 1).is_err());
        // Parallel arcs sharing both punctures are out of scope.
        assert!(essential_intersections(s(1, 2), s(1, 2), 2).is_err());
    }

    #[test]
    fn symmetry() {
        for (a, b, k) in [
            (s(1, 0), s(-1, 3), 1u8),
            (s(-3, 4), s(1, 0), 0),
            (s(1, 2), s(1, 0), 2),
        ] {
            assert_eq!(
                essential_intersections(a, b, k).unwrap(),
                essential_intersections(b, a, k).unwrap()
            );
        }
    }

    #[test]
    fn matrix_actions() {
        // phi on 3/4 adds the denominator.
        assert_eq!(apply_matrix(&MappingMatrix::PHI, s(3, 4)), s(7, 4));
        // psi on (3, -4) gives (-3, 2).
        assert_eq!(apply_matrix(&MappingMatrix::PSI, s(3, -4)), s(-3, 2));
        // H negates the numerator.
        assert_eq!(apply_matrix(&MappingMatrix::H, s(3, 4)), s(-3, 4));
    }

    #[test]
    fn involutions() {
        for p in -6..=6i64 {
            for q in -6..=6i64 {
                if p == 0 && q == 0 {
                    continue;
                }
                let x = s(p, q);
                assert_eq!(
                    apply_matrix(&MappingMatrix::PHI, apply_matrix(&MappingMatrix::PHI_INV, x)),
                    x
                );
                assert_eq!(apply_matrix(&MappingMatrix::H, apply_matrix(&MappingMatrix::H, x)), x);
                assert_eq!(
                    apply_matrix(&MappingMatrix::PSI, apply_matrix(&MappingMatrix::PSI, x)),
                    x
                );
            }
        }
    }

    #[test]
    fn fundamental_domain() {
        let (r, w) = reduce_to_fundamental(s(3, 4));
        assert_eq!(r, s(-1, 4));
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].kind, HomeoKind::PhiInv);
        assert_eq!(replay_word_inverse(r, &w), s(3, 4));

        let (r, w) = reduce_to_fundamental(s(1, 2));
        assert_eq!(r, s(1, 2));
        assert!(w.is_empty());

        let (r, w) = reduce_to_fundamental(s(7, 2));
        assert_eq!(r, s(1, 2));
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|m| m.kind == HomeoKind::PhiInv));
        assert_eq!(replay_word_inverse(r, &w), s(7, 2));
    }

    #[test]
    fn fundamental_domain_bounds() {
        for p in -40..=40i64 {
            for q in 1..=12i64 {
                let x = s(p, q);
                let (r, w) = reduce_to_fundamental(x);
                assert!(-r.den() < 2 * r.num() && 2 * r.num() <= r.den(), "{x} -> {r}");
                assert!(w.len() as i64 <= (p.abs() + q - 1) / q + 1);
                assert_eq!(replay_word_inverse(r, &w), x);
            }
        }
    }
}

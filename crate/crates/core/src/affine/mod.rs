//! Finite fields of order `p` and `p^2`, and affine planes over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in `GF(p^e)`, `e ∈ {1, 2}`. The element `a + bα` is encoded as
/// `a + b·p`, where `α` is a root of the modulus `x^2 + bx + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldContext {
    p: u64,
    e: u32,
    /// `(b, c)` of the modulus `x^2 + bx + c`; unused when `e = 1`.
    modulus: (u64, u64),
}

/// Builds `GF(p^e)`. For `e = 2` the modulus is the lexicographically
/// smallest monic irreducible quadratic.
pub fn field_context(p: u64, e: u32) -> Result<FieldContext> {
    if !is_prime(p) {
        return Err(Error::Composite(p));
    }
    match e {
        1 => Ok(FieldContext { p, e, modulus: (0, 0) }),
        2 => {
            let modulus = (0..p)
                .flat_map(|b| (0..p).map(move |c| (b, c)))
                .find(|&(b, c)| (0..p).all(|x| (x * x + b * x + c) % p != 0))
                .expect("an irreducible quadratic exists over every prime field");
            Ok(FieldContext { p, e, modulus })
        }
        _ => Err(Error::UnsupportedOrder(p.pow(e))),
    }
}

impl FieldContext {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// `(b, c)` with modulus `x^2 + bx + c`, for degree 2.
    pub fn modulus(&self) -> Option<(u64, u64)> {
        (self.e == 2).then_some(self.modulus)
    }

    fn split(&self, x: u64) -> (u64, u64) {
        debug_assert!(x < self.order());
        (x % self.p, x / self.p)
    }

    fn join(&self, a: u64, b: u64) -> u64 {
        a + b * self.p
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let p = self.p;
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        self.join((a + c) % p, (b + d) % p)
    }

    pub fn neg(&self, x: u64) -> u64 {
        let p = self.p;
        let (a, b) = self.split(x);
        self.join((p - a) % p, (p - b) % p)
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let p = self.p;
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        // (a + bα)(c + dα) = ac + (ad + bc)α + bd·α², with α² = -(mb·α + mc)
        let (mb, mc) = self.modulus;
        let bd = b * d % p;
        let lo = (a * c + (p - bd) * mc) % p;
        let hi = (a * d + b * c + (p - bd) * mb) % p;
        self.join(lo, hi)
    }

    pub fn inv(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroInverse);
        }
        // x^(q-2) = x^-1 in the multiplicative group of order q - 1
        let mut result = 1;
        let mut base = x;
        let mut k = self.order() - 2;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        Ok(result)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }
}

/// An affine plane of order `m` on points `0..m^2`.
///
/// `classes[i][t]` is the line `A_{i+1, t+1}`; each class partitions the points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePlane {
    pub order: usize,
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl AffinePlane {
    /// Line `A_{i,t}` with 1-based `i` and `t`.
    pub fn line(&self, i: usize, t: usize) -> &[usize] {
        &self.classes[i - 1][t - 1]
    }
}

/// Splits a prime power `q = p^e` with `e ∈ {1, 2}`.
fn prime_and_degree(q: u64) -> Result<(u64, u32)> {
    if is_prime(q) {
        return Ok((q, 1));
    }
    let r = (q as f64).sqrt().round() as u64;
    if r * r == q && is_prime(r) {
        return Ok((r, 2));
    }
    Err(Error::UnsupportedOrder(q))
}

/// The plane over `GF(q)` for `q = p` or `q = p^2`. Point `(x, y)` is
/// `x·q + y`. Classes `1..=q` hold the lines `y = ax + b` for slope `a = i - 1`,
/// indexed by `t = b + 1`; class `q + 1` holds the verticals `x = c`,
/// indexed by `t = c + 1`.
pub fn affine_plane(q: u64) -> Result<AffinePlane> {
    let (p, e) = prime_and_degree(q)?;
    let f = field_context(p, e)?;
    let qs = q as usize;
    let point = |x: u64, y: u64| (x * q + y) as usize;
    let mut classes: Vec<Vec<Vec<usize>>> = f
        .elements()
        .map(|a| {
            f.elements()
                .map(|b| f.elements().map(|x| point(x, f.add(f.mul(a, x), b))).collect())
                .collect()
        })
        .collect();
    classes.push(f.elements().map(|c| f.elements().map(|y| point(c, y)).collect()).collect());
    let plane = AffinePlane { order: qs, classes };
    if let Err(why) = verify_plane(&plane) {
        return Err(Error::Internal(format!("plane of order {q} failed verification: {why}")));
    }
    Ok(plane)
}

/// Checks the structure, that each class partitions the points, and that
/// lines from different classes meet in exactly one point.
pub fn verify_plane(pl: &AffinePlane) -> std::result::Result<(), String> {
    let m = pl.order;
    let npoints = m * m;
    if pl.classes.len() != m + 1 {
        return Err(format!("expected {} classes, found {}", m + 1, pl.classes.len()));
    }
    let mut masks = Vec::with_capacity(m * (m + 1));
    for (i, class) in pl.classes.iter().enumerate() {
        if class.len() != m {
            return Err(format!("class {} has {} lines, expected {m}", i + 1, class.len()));
        }
        let mut owner = vec![usize::MAX; npoints];
        for (t, line) in class.iter().enumerate() {
            if line.len() != m {
                return Err(format!("line A_{{{},{}}} has {} points", i + 1, t + 1, line.len()));
            }
            let mut mask = vec![0u64; npoints.div_ceil(64)];
            for &x in line {
                if x >= npoints {
                    return Err(format!("point {x} out of range"));
                }
                if owner[x] != usize::MAX {
                    return Err(format!(
                        "point {x} lies on lines {} and {} of class {}",
                        owner[x] + 1,
                        t + 1,
                        i + 1
                    ));
                }
                owner[x] = t;
                mask[x / 64] |= 1 << (x % 64);
            }
            masks.push((i, t, mask));
        }
    }
    for (k, (i, t, a)) in masks.iter().enumerate() {
        for (i2, t2, b) in &masks[k + 1..] {
            let meet: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
            let want = if i == i2 { 0 } else { 1 };
            if meet != want {
                return Err(format!(
                    "lines A_{{{},{}}} and A_{{{},{}}} meet in {meet} points, expected {want}",
                    i + 1,
                    t + 1,
                    i2 + 1,
                    t2 + 1
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_modulus() {
        let f = field_context(3, 2).unwrap();
        assert_eq!(f.modulus(), Some((0, 1)));
        // α = 0 + 1·3; α² = -1 = 2
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn prime_fields() {
        let f = field_context(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(field_context(4, 1), Err(Error::Composite(4)));
        let f5 = field_context(5, 1).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.inv(0), Err(Error::ZeroInverse));
    }

    #[test]
    fn identity_and_inverses() {
        for (p, e) in [(2, 1), (2, 2), (3, 2), (5, 2), (7, 2), (11, 1)] {
            let f = field_context(p, e).unwrap();
            for x in f.elements() {
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn small_planes() {
        let p2 = affine_plane(2).unwrap();
        assert_eq!(p2.classes.len(), 3);
        assert_eq!(p2.classes.iter().flatten().count(), 6);
        let p3 = affine_plane(3).unwrap();
        assert_eq!(p3.classes.iter().flatten().count(), 12);
        assert!(p3.classes.iter().flatten().all(|l| l.len() == 3));
        let p9 = affine_plane(9).unwrap();
        assert_eq!(p9.classes.len(), 10);
        assert_eq!(p9.classes.iter().flatten().count(), 90);
    }

    #[test]
    fn verified_orders() {
        for q in [4, 5, 7] {
            assert_eq!(verify_plane(&affine_plane(q).unwrap()), Ok(()));
        }
    }

    #[test]
    fn unsupported_orders() {
        for q in [1, 6, 8, 12, 27] {
            assert!(matches!(affine_plane(q), Err(Error::UnsupportedOrder(_))), "q = {q}");
        }
    }

    #[test]
    fn moved_point_breaks_partition() {
        let mut pl = affine_plane(3).unwrap();
        let x = pl.classes[0][0].pop().unwrap();
        pl.classes[0][1].push(x);
        assert!(verify_plane(&pl).is_err());
    }

    #[test]
    fn each_point_on_one_line_per_class() {
        let pl = affine_plane(4).unwrap();
        for x in 0..16 {
            for class in &pl.classes {
                assert_eq!(class.iter().filter(|l| l.contains(&x)).count(), 1);
            }
        }
    }

    #[test]
    fn plane_json() {
        let pl = affine_plane(2).unwrap();
        let text = serde_json::to_string(&pl).unwrap();
        assert_eq!(
            text,
            r#"{"order":2,"classes":[[[0,2],[1,3]],[[0,3],[1,2]],[[0,1],[2,3]]]}"#
        );
        let back: AffinePlane = serde_json::from_str(&text).unwrap();
        assert_eq!(back, pl);
    }
}

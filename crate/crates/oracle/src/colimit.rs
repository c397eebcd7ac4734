//! The direct limit of ℤ² under the rotation-algebra connecting maps, built
//! stage by stage and compared with 𝒦_α.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use nsolenoid::ktheory::{k0_stage_map, k_member, phi_k0_matrix, upsilon_matrix};
use nsolenoid::{Error, QnRational, Result, XiElement};
use serde::Serialize;

use crate::reference::{pow, Reference};

type Vec2 = (BigInt, BigInt);
type Image = (BigRational, BigRational);

/// A class of the direct limit, represented at stage `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitStage {
    pub k: usize,
    pub rep: Vec2,
    /// `υ_k(rep)`.
    pub image: Image,
}

struct Stages {
    n: u64,
    /// `r_k`, read from digits.
    r: Vec<BigInt>,
    /// `J_{2k}`.
    j: Vec<BigInt>,
}

impl Stages {
    fn new(alpha: &XiElement, depth: usize) -> Result<Self> {
        let re = Reference::of(alpha);
        let n = alpha.modulus();
        let r = (0..=depth)
            .map(|k| Ok(re.digit(2 * k + 1)? * n + re.digit(2 * k)?))
            .collect::<Result<Vec<_>>>()?;
        let j = (0..=depth).map(|k| re.j(2 * k)).collect::<Result<Vec<_>>>()?;
        Ok(Stages { n, r, j })
    }

    /// Stage `k → k+1` with the given sign on `r_k`.
    fn step(&self, k: usize, v: &Vec2, sign: i32) -> Vec2 {
        let n2 = BigInt::from(self.n * self.n);
        (&v.0 + BigInt::from(sign) * &self.r[k] * &v.1, n2 * &v.1)
    }

    fn matrix(&self, k: usize) -> [[BigInt; 2]; 2] {
        [[BigInt::one(), -&self.r[k]], [BigInt::zero(), BigInt::from(self.n * self.n)]]
    }

    fn upsilon(&self, k: usize, v: &Vec2) -> Image {
        let d = pow(self.n, 2 * k);
        (
            BigRational::from_integer(v.0.clone()) + BigRational::new(&v.1 * &self.j[k], d.clone()),
            BigRational::new(v.1.clone(), d),
        )
    }

    fn upsilon_matrix(&self, k: usize) -> [[BigRational; 2]; 2] {
        let d = pow(self.n, 2 * k);
        [
            [BigRational::one(), BigRational::new(self.j[k].clone(), d.clone())],
            [BigRational::zero(), BigRational::new(BigInt::one(), d)],
        ]
    }
}

fn check_depth(depth: usize, max_depth: usize) -> Result<()> {
    if depth > max_depth {
        return Err(Error::InvalidArgument(format!(
            "colimit depth {depth} exceeds the configured maximum {max_depth}"
        )));
    }
    Ok(())
}

/// Classes of the direct limit represented by `(a, b)` with `|a|, |b| ≤ window`
/// at stages `0..=depth`, identified by their υ-images.
pub fn colimit_build(alpha: &XiElement, depth: usize, window: i64, max_depth: usize) -> Result<Vec<ColimitStage>> {
    check_depth(depth, max_depth)?;
    let st = Stages::new(alpha, depth)?;
    let mut classes: BTreeMap<(String, String), ColimitStage> = BTreeMap::new();
    for k in 0..=depth {
        for a in -window..=window {
            for b in -window..=window {
                let rep = (BigInt::from(a), BigInt::from(b));
                let image = st.upsilon(k, &rep);
                let key = (image.0.to_string(), image.1.to_string());
                classes.entry(key).or_insert(ColimitStage { k, rep, image });
            }
        }
    }
    Ok(classes.into_values().collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct ColimitReport {
    pub holds: bool,
    pub depth: usize,
    pub window: i64,
    pub classes: usize,
    /// `υ_{k+1}·M_k = υ_k` for the connecting maps `[[1, −r_k], [0, N²]]`.
    pub stage_compatible: bool,
    /// The same identity with `+r_k` in the corner.
    pub plus_sign_compatible: bool,
    pub stage_maps_match_library: bool,
    pub upsilon_matches_library: bool,
    /// Pushing a representative forward to stage `depth` keeps its image.
    pub forward_images_agree: bool,
    /// Class images lying outside 𝒦_α.
    pub outside_k: Vec<String>,
    /// Window elements of 𝒦_α not reached by stage `depth`.
    pub unreached: Vec<String>,
}

fn show(x: &Image) -> String {
    format!("({}, {})", x.0, x.1)
}

/// Checks that the direct limit up to stage `depth` is
/// `{(z + pJ_m/N^m, p/N^m) : m ≤ 2·depth}` within the numerator window.
pub fn colimit_compare(alpha: &XiElement, depth: usize, window: i64, max_depth: usize) -> Result<ColimitReport> {
    check_depth(depth, max_depth)?;
    let st = Stages::new(alpha, depth)?;
    let re = Reference::of(alpha);
    let n = alpha.modulus();

    let mut stage_compatible = true;
    let mut plus_sign_compatible = true;
    let mut stage_maps_match_library = true;
    let mut upsilon_matches_library = true;
    for k in 0..=depth {
        if st.upsilon_matrix(k) != upsilon_matrix(alpha, k)? {
            upsilon_matches_library = false;
        }
        if k == depth {
            break;
        }
        if st.matrix(k) != k0_stage_map(alpha, k)? {
            stage_maps_match_library = false;
        }
        let mut plus = st.matrix(k);
        plus[0][1] = -&plus[0][1];
        if plus != phi_k0_matrix(alpha, k)? {
            stage_maps_match_library = false;
        }
        for e in [(BigInt::one(), BigInt::zero()), (BigInt::zero(), BigInt::one())] {
            let here = st.upsilon(k, &e);
            stage_compatible &= st.upsilon(k + 1, &st.step(k, &e, -1)) == here;
            plus_sign_compatible &= st.upsilon(k + 1, &st.step(k, &e, 1)) == here;
        }
    }

    let classes = colimit_build(alpha, depth, window, max_depth)?;
    let mut forward_images_agree = true;
    let mut outside_k = Vec::new();
    for c in &classes {
        let mut v = c.rep.clone();
        for k in c.k..depth {
            v = st.step(k, &v, -1);
        }
        forward_images_agree &= st.upsilon(depth, &v) == c.image;
        let second = QnRational::from_rational(&c.image.1, n)?;
        let m = second.exp() as usize;
        let own = (&c.image.0 - BigRational::new(second.numer() * re.j(m)?, pow(n, m))).is_integer();
        if !own || !k_member(alpha, &c.image.0, &second)? {
            outside_k.push(show(&c.image));
        }
    }

    let top = pow(n, 2 * depth);
    let jt = re.j(2 * depth)?;
    let mut unreached = Vec::new();
    for m in 0..=2 * depth {
        for p in -window..=window {
            let x = QnRational::new(p, m as u32, n)?;
            if x.exp() as usize != m {
                continue;
            }
            let shift = BigRational::new(x.numer() * re.j(m)?, pow(n, m));
            for z in -window..=window {
                let first = BigRational::from_integer(BigInt::from(z)) + &shift;
                let b = x.numer() * pow(n, 2 * depth - m);
                let a = &first - BigRational::new(&b * &jt, top.clone());
                let reached = a.is_integer() && st.upsilon(depth, &(a.to_integer(), b.clone())) == (first.clone(), x.to_rational());
                if !reached || !k_member(alpha, &first, &x)? {
                    unreached.push(show(&(first, x.to_rational())));
                }
            }
        }
    }

    let holds = stage_compatible
        && stage_maps_match_library
        && upsilon_matches_library
        && forward_images_agree
        && outside_k.is_empty()
        && unreached.is_empty();
    Ok(ColimitReport {
        holds,
        depth,
        window,
        classes: classes.len(),
        stage_compatible,
        plus_sign_compatible,
        stage_maps_match_library,
        upsilon_matches_library,
        forward_images_agree,
        outside_k,
        unreached,
    })
}

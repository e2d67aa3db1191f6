//! Borel-Weil-Bott for GL(d+1): cohomology of line bundles on the flag
//! variety, of homogeneous bundles `E_mu` on `P^d`, the weight data of the
//! dual BGG complex, and Bott's formula for twisted differential forms.
//!
//! Twist dictionary: `O(1) = E_{(1,0,...,0)}` (so `h^0(O(1)) = d+1`) and
//! `Omega^p = E_{w_p . 0}`. Hence `Omega^p(k) = E_{w_p . 0 + k e_1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{
    bgg_coset_reps, dot_action, is_dominant, is_l_dominant, weyl_dim, RhoShift, Weight, WeylElement,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub degree: usize,
    pub dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub highest_weight: Option<Weight>,
}

/// Cohomology `H^i` for `i = 0..=d`, as dimensions with an optional
/// highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfile {
    pub entries: Vec<ProfileEntry>,
}

impl CohomologyProfile {
    pub fn zero(d: usize) -> Self {
        Self {
            entries: (0..=d)
                .map(|degree| ProfileEntry {
                    degree,
                    dim: 0,
                    highest_weight: None,
                })
                .collect(),
        }
    }

    pub fn from_dims(dims: &[u64]) -> Self {
        Self {
            entries: dims
                .iter()
                .enumerate()
                .map(|(degree, &dim)| ProfileEntry {
                    degree,
                    dim,
                    highest_weight: None,
                })
                .collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn dim(&self, degree: usize) -> u64 {
        self.entries.get(degree).map_or(0, |e| e.dim)
    }

    pub fn dims(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.dim == 0)
    }

    /// Degrees with nonzero cohomology.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.dim > 0)
            .map(|e| e.degree)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|e| {
                if e.degree % 2 == 0 {
                    e.dim as i64
                } else {
                    -(e.dim as i64)
                }
            })
            .sum()
    }
}

/// The permutation sorting `chi` into strictly decreasing order, or `None`
/// if `chi` has a repeated entry.
fn sorting_permutation(chi: &Weight) -> Option<WeylElement> {
    if chi.has_repeated_entry() {
        return None;
    }
    let mut order: Vec<usize> = (0..chi.rank()).collect();
    order.sort_by(|&a, &b| chi.entries()[b].cmp(&chi.entries()[a]));
    // order[k] = source position of the k-th largest entry, so w(order[k]) = k
    let mut perm = vec![0; chi.rank()];
    for (k, &src) in order.iter().enumerate() {
        perm[src] = k;
    }
    Some(WeylElement::new(perm).expect("sorting order is a permutation"))
}

/// Cohomology of the line bundle `L_mu` on GL(d+1)/B.
pub fn bwb_line_bundle(mu: &Weight) -> Result<CohomologyProfile> {
    let rho = RhoShift::new(mu.rank())?;
    let shifted = mu.add(rho.weight())?;
    let mut profile = CohomologyProfile::zero(mu.d());
    let Some(w) = sorting_permutation(&shifted) else {
        return Ok(profile);
    };
    let highest = dot_action(&w, mu)?;
    debug_assert!(is_dominant(&highest));
    let degree = w.length();
    let dim = weyl_dim(&highest)?;
    if degree > mu.d() {
        // Degrees above dim P^d cannot occur for L-dominant input; for general
        // mu the flag variety has dimension d(d+1)/2, so extend the profile.
        profile
            .entries
            .extend((mu.d() + 1..=degree).map(|degree| ProfileEntry {
                degree,
                dim: 0,
                highest_weight: None,
            }));
    }
    profile.entries[degree] = ProfileEntry {
        degree,
        dim,
        highest_weight: Some(highest),
    };
    Ok(profile)
}

/// Cohomology of the homogeneous bundle `E_mu` on `P^d` for L-dominant `mu`.
pub fn bwb_homogeneous(mu: &Weight) -> Result<CohomologyProfile> {
    if !is_l_dominant(mu) {
        return Err(Error::NotLDominant(mu.to_string()));
    }
    let profile = bwb_line_bundle(mu)?;
    debug_assert_eq!(profile.entries.len(), mu.rank());
    Ok(profile)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BggTerm {
    pub index: usize,
    #[serde(serialize_with = "serialize_weyl")]
    pub coset_rep: WeylElement,
    pub weight: Weight,
    pub l_dominant: bool,
    pub profile: CohomologyProfile,
}

fn serialize_weyl<S: serde::Serializer>(
    w: &WeylElement,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.cycle_notation())
}

/// Weight data of the dual BGG complex of a dominant weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BggComplexData {
    pub lambda: Weight,
    pub dim_v_lambda: u64,
    pub terms: Vec<BggTerm>,
    /// `H^i(P^d, E_{w_j . lambda})` is `V(lambda)` for `i = j` and zero otherwise.
    pub delta_property: bool,
}

pub fn bgg_complex(lambda: &Weight) -> Result<BggComplexData> {
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let d = lambda.d();
    let dim_v_lambda = weyl_dim(lambda)?;
    let mut terms = Vec::with_capacity(d + 1);
    for (index, w) in bgg_coset_reps(d).into_iter().enumerate() {
        let weight = dot_action(&w, lambda)?;
        let l_dominant = is_l_dominant(&weight);
        let profile = if l_dominant {
            bwb_homogeneous(&weight)?
        } else {
            bwb_line_bundle(&weight)?
        };
        terms.push(BggTerm {
            index,
            coset_rep: w,
            weight,
            l_dominant,
            profile,
        });
    }
    let delta_property = terms.iter().all(|t| {
        t.l_dominant
            && t.profile.entries.iter().all(|e| {
                if e.degree == t.index {
                    e.dim == dim_v_lambda && e.highest_weight.as_ref() == Some(lambda)
                } else {
                    e.dim == 0
                }
            })
    });
    Ok(BggComplexData {
        lambda: lambda.clone(),
        dim_v_lambda,
        terms,
        delta_property,
    })
}

/// `sum_j (-1)^j chi(E_{w_j . lambda})`, where `chi` is the alternating sum of
/// the cohomology profile. The delta property forces this to equal
/// `(d+1) dim V(lambda)`.
pub fn euler_characteristic_check(lambda: &Weight) -> Result<i64> {
    let data = bgg_complex(lambda)?;
    Ok(data
        .terms
        .iter()
        .map(|t| {
            let chi = t.profile.euler_characteristic();
            if t.index % 2 == 0 {
                chi
            } else {
                -chi
            }
        })
        .sum())
}

/// The weight realising `Omega^p(k)` on `P^d` as a homogeneous bundle.
pub fn twisted_form_weight(p: usize, k: i64, d: usize) -> Result<Weight> {
    if p > d {
        return Err(Error::FormDegreeOutOfRange { p, d });
    }
    let rank = d + 1;
    let wp = WeylElement::cycle_prefix(rank, p + 1);
    let forms = dot_action(&wp, &Weight::zero(rank)?)?;
    forms.add(&Weight::unit(rank, 0)?.scaled(k))
}

/// Bott-formula dimensions via Borel-Weil-Bott and the twist dictionary.
pub fn bott_dims_via_bwb(p: usize, k: i64, d: usize) -> Result<CohomologyProfile> {
    bwb_homogeneous(&twisted_form_weight(p, k, d)?)
}

fn binomial(n: i64, r: i64) -> u64 {
    if r < 0 || n < r || n < 0 {
        return 0;
    }
    let r = r.min(n - r) as u64;
    let n = n as u64;
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Bott's formula for `h^q(P^d, Omega^p(k))`.
pub fn bott_dims(p: usize, k: i64, d: usize) -> Result<CohomologyProfile> {
    if p > d {
        return Err(Error::FormDegreeOutOfRange { p, d });
    }
    let (pi, di) = (p as i64, d as i64);
    let mut dims = vec![0u64; d + 1];
    if k == 0 {
        dims[p] += 1;
    }
    if k > pi {
        dims[0] += binomial(k + di - pi, k) * binomial(k - 1, pi);
    }
    if k < pi - di {
        dims[d] += binomial(-k + pi, -k) * binomial(-k - 1, di - pi);
    }
    Ok(CohomologyProfile::from_dims(&dims))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn line_bundle_examples() {
        assert!(bwb_line_bundle(&w(&[-1, 0])).unwrap().is_zero());
        let omega = bwb_line_bundle(&w(&[-1, 1])).unwrap();
        assert_eq!(omega.dims(), vec![0, 1]);
        assert_eq!(omega.entries[1].highest_weight, Some(w(&[0, 0])));
        assert_eq!(bwb_line_bundle(&w(&[0, 0])).unwrap().dims(), vec![1, 0]);
    }

    #[test]
    fn homogeneous_examples() {
        let lambda = w(&[2, 1, 0]);
        let p = bwb_homogeneous(&lambda).unwrap();
        assert_eq!(p.dims(), vec![8, 0, 0]);
        assert_eq!(p.entries[0].highest_weight, Some(lambda));
        assert_eq!(
            bwb_homogeneous(&w(&[-2, 1, 1])).unwrap().dims(),
            vec![0, 0, 1]
        );
        assert_eq!(
            bwb_homogeneous(&w(&[-1, 1, 0])).unwrap().dims(),
            vec![0, 1, 0]
        );
        assert!(matches!(
            bwb_homogeneous(&w(&[0, 0, 1])),
            Err(Error::NotLDominant(_))
        ));
    }

    #[test]
    fn bgg_examples() {
        let data = bgg_complex(&w(&[0, 0, 0])).unwrap();
        let weights: Vec<Weight> = data.terms.iter().map(|t| t.weight.clone()).collect();
        assert_eq!(weights, vec![w(&[0, 0, 0]), w(&[-1, 1, 0]), w(&[-2, 1, 1])]);
        assert!(data.delta_property);
        for t in &data.terms {
            assert_eq!(t.profile.support(), vec![t.index]);
            assert_eq!(t.profile.dim(t.index), 1);
        }

        let data = bgg_complex(&w(&[1, 0, 0])).unwrap();
        assert!(data.delta_property);
        assert!(data
            .terms
            .iter()
            .all(|t| t.l_dominant && t.profile.dim(t.index) == 3));

        let data = bgg_complex(&w(&[0, 0])).unwrap();
        assert_eq!(data.terms[1].weight, w(&[-1, 1]));
        assert!(bgg_complex(&w(&[0, 1])).is_err());
    }

    #[test]
    fn bott_examples() {
        assert_eq!(bott_dims(0, 1, 2).unwrap().dims(), vec![3, 0, 0]);
        assert_eq!(bott_dims(1, 0, 2).unwrap().dims(), vec![0, 1, 0]);
        assert!(bott_dims(1, 1, 1).unwrap().is_zero());
        assert!(matches!(
            bott_dims(3, 0, 2),
            Err(Error::FormDegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic_check(&w(&[0, 0, 0])).unwrap(), 3);
        assert_eq!(euler_characteristic_check(&w(&[0, 0])).unwrap(), 2);
        assert_eq!(euler_characteristic_check(&w(&[1, 0, 0])).unwrap(), 9);
    }

    #[test]
    fn twist_dictionary_pins_o1() {
        for d in 1..=5 {
            let o1 = bwb_homogeneous(&twisted_form_weight(0, 1, d).unwrap()).unwrap();
            assert_eq!(o1.dim(0), d as u64 + 1);
        }
    }

    #[test]
    fn bott_formula_matches_bwb_route() {
        for d in 1..=4 {
            for p in 0..=d {
                for k in -7..=7 {
                    assert_eq!(
                        bott_dims(p, k, d).unwrap().dims(),
                        bott_dims_via_bwb(p, k, d).unwrap().dims(),
                        "p={p} k={k} d={d}"
                    );
                }
            }
        }
    }
}

//! Finite atomic probability measures on code space and on the real line,
//! with push-forward and pull-back transport between them.

use crate::cantor::{BinaryAddress, CantorSet};
use crate::error::{Error, Result};
use crate::funcgen::CodeFunction;
use std::io::Write;

/// Total-mass tolerance for probability normalization.
pub const MASS_TOL: f64 = 1e-12;

/// A probability measure on addresses of one fixed length.
#[derive(Clone, Debug)]
pub struct CodedMeasure {
    depth: u32,
    /// Sorted by address; weights strictly positive.
    atoms: Vec<(BinaryAddress, f64)>,
}

impl CodedMeasure {
    /// Weight 2^-d on each of the 2^d addresses of length d.
    pub fn uniform(depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Parameter("coding depth must be at least 1".into()));
        }
        if depth > 20 {
            return Err(Error::Parameter(format!(
                "coding depth {depth} would enumerate 2^{depth} atoms"
            )));
        }
        let w = 2.0f64.powi(-(depth as i32));
        let atoms = BinaryAddress::all_of_len(depth).map(|a| (a, w)).collect();
        Ok(Self { depth, atoms })
    }

    /// Build from explicit atoms; rejects duplicate or wrong-length
    /// addresses and unnormalized weights, drops exact zero weights.
    pub fn new(depth: u32, mut atoms: Vec<(BinaryAddress, f64)>) -> Result<Self> {
        atoms.retain(|(_, w)| *w != 0.0);
        if atoms.is_empty() {
            return Err(Error::Parameter("measure needs at least one atom".into()));
        }
        for (addr, w) in &atoms {
            if addr.len() != depth {
                return Err(Error::Parameter(format!(
                    "address {addr} has length {}, expected {depth}",
                    addr.len()
                )));
            }
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::Parameter(format!("weight {w} at {addr} invalid")));
            }
        }
        atoms.sort_by_key(|(a, _)| *a);
        for pair in atoms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Parameter(format!(
                    "duplicate address {}",
                    pair[0].0
                )));
            }
        }
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::Unnormalized {
                total,
                tol: MASS_TOL,
            });
        }
        Ok(Self { depth, atoms })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[(BinaryAddress, f64)] {
        &self.atoms
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }
}

/// A probability measure on the real line with finitely many atoms.
/// Canonical form: sorted by location, locations pairwise distinct
/// (bit-identical duplicates are merged on construction).
#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    atoms: Vec<(f64, f64)>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Parameter("measure needs at least one atom".into()));
        }
        let mut cleaned = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            if !x.is_finite() {
                return Err(Error::Parameter(format!("location {x} is not finite")));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Parameter(format!("weight {w} at {x} invalid")));
            }
            // normalize -0.0 so merging is on numeric value
            let x = if x == 0.0 { 0.0 } else { x };
            cleaned.push((x, w));
        }
        cleaned.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(cleaned.len());
        for (x, w) in cleaned {
            match merged.last_mut() {
                Some((lx, lw)) if *lx == x => *lw += w,
                _ => merged.push((x, w)),
            }
        }
        let total: f64 = merged.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::Unnormalized {
                total,
                tol: MASS_TOL,
            });
        }
        Ok(Self { atoms: merged })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn locations(&self) -> Vec<f64> {
        self.atoms.iter().map(|(x, _)| *x).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// Debug serialization: `location,weight` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "location,weight")?;
        for (x, w) in &self.atoms {
            writeln!(out, "{x},{w}")?;
        }
        Ok(())
    }
}

/// Transport a coded measure through a code-space function. Atoms whose
/// images are bit-identical merge with weights summed; near-collisions
/// stay separate and surface downstream as large energies.
pub fn pushforward(nu: &CodedMeasure, g: &CodeFunction) -> Result<DiscreteMeasure> {
    let atoms = nu
        .atoms()
        .iter()
        .map(|(addr, w)| Ok((g.evaluate(addr)?, *w)))
        .collect::<Result<Vec<_>>>()?;
    DiscreteMeasure::new(atoms)
}

/// Inverse transport: every atom of `mu` must sit exactly on a depth-d
/// midpoint of `set`; the midpoint's address inherits the weight.
pub fn pullback(mu: &DiscreteMeasure, set: &CantorSet, depth: u32) -> Result<CodedMeasure> {
    let mut atoms = Vec::with_capacity(mu.len());
    for &(x, w) in mu.atoms() {
        let addr = set.point_to_address(x, depth)?;
        if set.address_to_point(&addr)? != x {
            return Err(Error::NotInSet(x));
        }
        atoms.push((addr, w));
    }
    CodedMeasure::new(depth, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::RemovalSchedule;
    use crate::funcgen::{coord_series_random, geometric_sigma};

    fn middle_thirds(depth: u32) -> CantorSet {
        CantorSet::new(RemovalSchedule::MiddleAlpha { alpha: 1.0 / 3.0 }, depth).unwrap()
    }

    #[test]
    fn uniform_examples() {
        let m1 = CodedMeasure::uniform(1).unwrap();
        assert_eq!(m1.len(), 2);
        for (_, w) in m1.atoms() {
            assert_eq!(*w, 0.5);
        }
        let m3 = CodedMeasure::uniform(3).unwrap();
        assert_eq!(m3.len(), 8);
        for (_, w) in m3.atoms() {
            assert_eq!(*w, 0.125);
        }
        for d in 1..=14 {
            assert_eq!(CodedMeasure::uniform(d).unwrap().total_weight(), 1.0);
        }
    }

    #[test]
    fn pushforward_under_embedding() {
        let nu = CodedMeasure::uniform(1).unwrap();
        let phi = CodeFunction::embedding(middle_thirds(1));
        let mu = pushforward(&nu, &phi).unwrap();
        let atoms = mu.atoms();
        assert_eq!(atoms.len(), 2);
        assert!((atoms[0].0 - 1.0 / 6.0).abs() < 1e-15 && atoms[0].1 == 0.5);
        assert!((atoms[1].0 - 5.0 / 6.0).abs() < 1e-15 && atoms[1].1 == 0.5);
    }

    #[test]
    fn constant_function_collapses_to_one_atom() {
        let nu = CodedMeasure::uniform(2).unwrap();
        let mu = pushforward(&nu, &CodeFunction::zero(2)).unwrap();
        assert_eq!(mu.atoms(), &[(0.0, 1.0)]);
    }

    #[test]
    fn generic_lambda_keeps_all_atoms() {
        // collision roots -df/dphi enumerated by brute force over pairs;
        // any lambda distinct from every root keeps all four atoms
        let d = 2;
        let set = middle_thirds(d);
        let phi = CodeFunction::embedding(set);
        let f = coord_series_random(7, &geometric_sigma(0.5, d)).unwrap();
        let addrs: Vec<BinaryAddress> = BinaryAddress::all_of_len(d).collect();
        let fv: Vec<f64> = addrs.iter().map(|a| f.evaluate(a).unwrap()).collect();
        let pv: Vec<f64> = addrs.iter().map(|a| phi.evaluate(a).unwrap()).collect();
        let mut roots = Vec::new();
        for i in 0..addrs.len() {
            for j in (i + 1)..addrs.len() {
                roots.push(-(fv[i] - fv[j]) / (pv[i] - pv[j]));
            }
        }
        let lambda = 0.37;
        assert!(roots.iter().all(|r| (r - lambda).abs() > 1e-9));
        let nu = CodedMeasure::uniform(d).unwrap();
        let combo = CodeFunction::affine(f, CodeFunction::embedding(middle_thirds(d)), 1.0, lambda);
        let mu = pushforward(&nu, &combo).unwrap();
        assert_eq!(mu.len(), 4);
        for (_, w) in mu.atoms() {
            assert_eq!(*w, 0.25);
        }
    }

    #[test]
    fn pullback_roundtrip() {
        let set = middle_thirds(2);
        let nu = CodedMeasure::uniform(2).unwrap();
        let mu = pushforward(&nu, &CodeFunction::embedding(set.clone())).unwrap();
        let back = pullback(&mu, &set, 2).unwrap();
        assert_eq!(back.atoms(), nu.atoms());
        // and forward again is exactly mu
        let again = pushforward(&back, &CodeFunction::embedding(set)).unwrap();
        assert_eq!(again.atoms(), mu.atoms());
    }

    #[test]
    fn pullback_weighted() {
        let set = middle_thirds(1);
        let mids = set.midpoints(1).unwrap();
        let mu = DiscreteMeasure::new(vec![(mids[0], 0.7), (mids[1], 0.3)]).unwrap();
        let nu = pullback(&mu, &set, 1).unwrap();
        let atoms = nu.atoms();
        assert_eq!(atoms[0].0.to_string(), "0");
        assert_eq!(atoms[0].1, 0.7);
        assert_eq!(atoms[1].0.to_string(), "1");
        assert_eq!(atoms[1].1, 0.3);
    }

    #[test]
    fn pullback_rejects_gap_points_and_non_midpoints() {
        let set = middle_thirds(2);
        let gap = DiscreteMeasure::new(vec![(0.5, 1.0)]).unwrap();
        assert!(matches!(pullback(&gap, &set, 1), Err(Error::NotInSet(_))));
        // inside an interval but not the midpoint
        let off = DiscreteMeasure::new(vec![(0.01, 1.0)]).unwrap();
        assert!(matches!(pullback(&off, &set, 1), Err(Error::NotInSet(_))));
    }

    #[test]
    fn unnormalized_rejected_not_rescaled() {
        assert!(matches!(
            DiscreteMeasure::new(vec![(0.0, 0.4), (1.0, 0.4)]),
            Err(Error::Unnormalized { .. })
        ));
        let a0 = BinaryAddress::parse("0").unwrap();
        let a1 = BinaryAddress::parse("1").unwrap();
        assert!(matches!(
            CodedMeasure::new(1, vec![(a0, 0.8), (a1, 0.4)]),
            Err(Error::Unnormalized { .. })
        ));
    }

    #[test]
    fn mass_preserved_and_atom_count_under_injection() {
        for seed in [1u64, 2, 3, 12345] {
            let d = 6;
            let f = coord_series_random(seed, &geometric_sigma(0.5, d)).unwrap();
            let phi = CodeFunction::embedding(CantorSet::new(RemovalSchedule::FatSvc, d).unwrap());
            let combo = CodeFunction::affine(f, phi, 1.0, 0.5 + seed as f64);
            let nu = CodedMeasure::uniform(d).unwrap();
            let mu = pushforward(&nu, &combo).unwrap();
            assert!((mu.total_weight() - 1.0).abs() <= MASS_TOL);
            assert_eq!(mu.len(), nu.len(), "seed {seed} merged unexpectedly");
        }
    }

    #[test]
    fn csv_shape() {
        let mu = DiscreteMeasure::new(vec![(0.25, 0.5), (0.75, 0.5)]).unwrap();
        let mut buf = Vec::new();
        mu.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "location,weight\n0.25,0.5\n0.75,0.5\n");
    }
}

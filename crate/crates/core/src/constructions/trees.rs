//! Tree families with budget sum `n - 1`: the three-legged spider and the
//! perfect binary tree.

use crate::error::{Error, Result};
use crate::game::{GameSpec, StrategyProfile, Version, MAX_PLAYERS};

use super::{Claim, ConstructionOutput, Provenance};

fn from_arcs(arcs: Vec<Vec<usize>>, version: Version) -> Result<(GameSpec, StrategyProfile)> {
    let budgets = arcs.iter().map(Vec::len).collect();
    let spec = GameSpec::new(budgets, version)?;
    let profile = StrategyProfile::new(arcs)?;
    Ok((spec, profile))
}

/// Three paths of `k` vertices whose first vertices all link to a hub `w`.
///
/// Vertex order is `x_1..x_k, y_1..y_k, z_1..z_k, w`; `n = 3k + 1`.
pub fn gen_spider(k: usize) -> Result<ConstructionOutput> {
    if k < 1 {
        return Err(Error::InvalidParameter("spider needs k >= 1".into()));
    }
    if k > (MAX_PLAYERS - 1) / 3 {
        return Err(Error::InvalidParameter(format!("spider k = {k} too large")));
    }
    let n = 3 * k + 1;
    let hub = 3 * k;
    let mut arcs = vec![Vec::new(); n];
    let mut labels = vec![String::new(); n];
    for (leg, name) in ["x", "y", "z"].iter().enumerate() {
        let base = leg * k;
        for i in 0..k {
            labels[base + i] = format!("{name}{}", i + 1);
            if i + 1 < k {
                arcs[base + i].push(base + i + 1);
            }
        }
        arcs[base].push(hub);
        arcs[base].sort_unstable();
    }
    labels[hub] = "w".into();
    let (spec, profile) = from_arcs(arcs, Version::Max)?;
    Ok(ConstructionOutput {
        spec,
        profile,
        provenance: Provenance::Spider,
        claims: vec![
            Claim::Equilibrium { version: Version::Max },
            Claim::DiameterExactly { value: 2 * k as u64 },
            Claim::TreeBg,
        ],
        permutation: None,
        layered: None,
        labels: Some(labels),
    })
}

/// Perfect binary tree on `n = 2^(k+1) - 1` vertices, every parent owning the
/// arcs to its two children.
pub fn gen_perfect_binary_tree(k: usize) -> Result<ConstructionOutput> {
    if k < 1 {
        return Err(Error::InvalidParameter("binary tree needs k >= 1".into()));
    }
    if k > 19 {
        return Err(Error::InvalidParameter(format!("binary tree k = {k} too large")));
    }
    let n = (1usize << (k + 1)) - 1;
    // 1-based parent i has children 2i and 2i + 1
    let arcs = (1..=n)
        .map(|i| if 2 * i < n { vec![2 * i - 1, 2 * i] } else { Vec::new() })
        .collect();
    let (spec, profile) = from_arcs(arcs, Version::Sum)?;
    Ok(ConstructionOutput {
        spec,
        profile,
        provenance: Provenance::BinaryTree,
        claims: vec![
            Claim::Equilibrium { version: Version::Sum },
            Claim::DiameterExactly { value: 2 * k as u64 },
            Claim::TreeBg,
        ],
        permutation: None,
        layered: None,
        labels: None,
    })
}

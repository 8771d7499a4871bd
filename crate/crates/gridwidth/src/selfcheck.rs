//! Desk-scale cross-validation of closed forms, sweeps, oracles and
//! certificates. Each check takes the memory cap and returns a one-line
//! summary or the first disagreement.

use gridwidth_core::formulas::{conjecture_4d, vbw_3d, vbw_3d_peak_scan, vbw_cubic, vbw_hypercube};
use gridwidth_core::oracle::{brute_bandwidth, brute_pathwidth, brute_phi_all};
use gridwidth_core::sweep::{sweep_profile, vbw_sweep};
use gridwidth_core::torus::{reduce_torus, vbw_torus, TorusShape};
use gridwidth_core::{
    best_formula, emit_bandwidth_ordering, emit_path_decomposition, ordering_bandwidth,
    verify_path_decomposition, Graph, GridShape,
};

pub struct Check {
    pub name: &'static str,
    pub run: fn(u64) -> Result<String, String>,
}

pub const CHECKS: &[Check] = &[
    Check { name: "closed forms vs sweep", run: formulas_vs_sweep },
    Check { name: "3D peak scan", run: peak_scan },
    Check { name: "hypercubes", run: hypercubes },
    Check { name: "oracles vs sweep", run: oracles_vs_sweep },
    Check { name: "tori", run: tori },
    Check { name: "certificates", run: certificates },
    Check { name: "4D conjecture", run: conjecture },
];

fn shape(dims: &[usize]) -> Result<GridShape, String> {
    GridShape::new(dims).map_err(|e| e.to_string())
}

fn sweep(dims: &[usize], mem: u64) -> Result<u64, String> {
    vbw_sweep(&shape(dims)?, mem).map_err(|e| e.to_string())
}

fn all_shapes(max_d: usize, max_n: usize, max_vertices: u64) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max_d: usize, max_n: usize, cap: u64, out: &mut Vec<Vec<usize>>) {
        let size: u64 = prefix.iter().map(|&n| n as u64).product();
        if size > cap {
            return;
        }
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_d {
            return;
        }
        let lo = prefix.last().copied().unwrap_or(2);
        for n in lo..=max_n {
            prefix.push(n);
            go(prefix, max_d, max_n, cap, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_d, max_n, max_vertices, &mut out);
    out
}

fn formulas_vs_sweep(mem: u64) -> Result<String, String> {
    let mut compared = 0;
    for dims in all_shapes(5, 12, 20_000) {
        let Some(r) = best_formula(&shape(&dims)?) else { continue };
        let f = r.value.ok_or("best formula without a value")?;
        let s = sweep(&dims, mem)?;
        if f != s {
            return Err(format!("{dims:?}: {} gives {f}, sweep {s}", r.method));
        }
        compared += 1;
    }
    for n in 2..=15u64 {
        let c = vbw_cubic(n).map_err(|e| e.to_string())?;
        let s = sweep(&[n as usize; 3], mem)?;
        if c != s {
            return Err(format!("cube {n}: formula {c}, sweep {s}"));
        }
    }
    Ok(format!("{compared} shapes, cubes up to 15"))
}

fn peak_scan(_: u64) -> Result<String, String> {
    let mut scanned = 0;
    for n1 in 2..=20u64 {
        for n2 in n1..=20 {
            for n3 in n2..=(n1 + n2 - 2) {
                let a = vbw_3d_peak_scan(n1, n2, n3).map_err(|e| e.to_string())?;
                let b = vbw_3d(n1, n2, n3).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("({n1},{n2},{n3}): scan {a}, formula {b}"));
                }
                scanned += 1;
            }
        }
    }
    Ok(format!("{scanned} triples"))
}

fn hypercubes(mem: u64) -> Result<String, String> {
    for d in 1..=14usize {
        let f = vbw_hypercube(d as u64).map_err(|e| e.to_string())?;
        let s = sweep(&vec![2; d], mem)?;
        if f != s {
            return Err(format!("Q{d}: formula {f}, sweep {s}"));
        }
    }
    Ok("Q1..Q14".into())
}

fn oracles_vs_sweep(mem: u64) -> Result<String, String> {
    let mut count = 0;
    for dims in all_shapes(4, 8, 16) {
        let g = Graph::grid(&dims).map_err(|e| e.to_string())?;
        let profile = sweep_profile(&shape(&dims)?, mem).map_err(|e| e.to_string())?;
        let phi = brute_phi_all(&g).map_err(|e| e.to_string())?;
        if phi != profile.values() {
            return Err(format!("{dims:?}: profiles differ"));
        }
        if g.vertex_count() <= 10 {
            let bw = brute_bandwidth(&g).map_err(|e| e.to_string())?;
            let pw = brute_pathwidth(&g).map_err(|e| e.to_string())?;
            if bw != profile.vbw() || pw != profile.vbw() {
                return Err(format!("{dims:?}: bw {bw}, pw {pw}, vbw {}", profile.vbw()));
            }
        }
        count += 1;
    }
    Ok(format!("{count} grids up to 16 vertices"))
}

fn tori(mem: u64) -> Result<String, String> {
    for lengths in [&[4usize][..], &[6], &[8], &[10], &[4, 4], &[4, 6]] {
        let t = TorusShape::new(lengths).map_err(|e| e.to_string())?;
        let phi = brute_phi_all(&Graph::torus(lengths).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let grid = reduce_torus(&t).map_err(|e| e.to_string())?;
        let profile = sweep_profile(&grid, mem).map_err(|e| e.to_string())?;
        if phi != profile.values() {
            return Err(format!("{lengths:?}: torus and reduced grid profiles differ"));
        }
        let w = vbw_torus(&t, mem).map_err(|e| e.to_string())?;
        if w.value != profile.vbw() {
            return Err(format!("{lengths:?}: vbw_torus {} vs {}", w.value, profile.vbw()));
        }
    }
    Ok("6 tori, every k".into())
}

fn certificates(mem: u64) -> Result<String, String> {
    let mut count = 0;
    for dims in all_shapes(4, 6, 1_000) {
        let s = shape(&dims)?;
        let vbw = vbw_sweep(&s, mem).map_err(|e| e.to_string())?;
        let ord = emit_bandwidth_ordering(&s, mem).map_err(|e| e.to_string())?;
        let bw = ordering_bandwidth(&s, &ord).map_err(|e| e.to_string())?;
        let pd = emit_path_decomposition(&s, mem).map_err(|e| e.to_string())?;
        let pw = verify_path_decomposition(&s, &pd).map_err(|v| format!("{dims:?}: {v}"))?;
        if bw != vbw || pw != vbw {
            return Err(format!("{dims:?}: ordering {bw}, decomposition {pw}, vbw {vbw}"));
        }
        count += 1;
    }
    Ok(format!("{count} grids"))
}

fn conjecture(mem: u64) -> Result<String, String> {
    for n in 2..=12u64 {
        let c = conjecture_4d(n).map_err(|e| e.to_string())?.value.ok_or("no value")?;
        let s = sweep(&[n as usize; 4], mem)?;
        if c != s {
            return Err(format!("n = {n}: conjecture {c}, sweep {s}"));
        }
    }
    Ok("n = 2..=12 MATCH".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gridwidth_core::DEFAULT_MEMORY_CAP;

    #[test]
    fn shape_enumeration() {
        let shapes = all_shapes(2, 3, 100);
        assert_eq!(shapes, vec![vec![2], vec![2, 2], vec![2, 3], vec![3], vec![3, 3]]);
        assert!(all_shapes(4, 8, 16).iter().all(|d| d.iter().product::<usize>() <= 16));
    }

    #[test]
    fn every_check_passes() {
        for check in CHECKS {
            if let Err(e) = (check.run)(DEFAULT_MEMORY_CAP) {
                panic!("{}: {e}", check.name);
            }
        }
    }
}

use crate::weightlattice::FiniteWeight;

/// A non-negative solution `r` of `Q(r; p) = k·d`, where
/// `Q(r; p) = Σ r_i (r_i + p_i) − Σ r_i r_{i+1}`, together with the weight
/// `Λ̄ + Σ r_i α_i` it describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthSolution {
    pub r: Vec<i64>,
    pub weight: FiniteWeight,
    pub depth: u32,
}

/// `Q(r; p)`.
pub fn depth_form(r: &[i64], p: &[i64]) -> i64 {
    let diag: i64 = r.iter().zip(p).map(|(ri, pi)| ri * (ri + pi)).sum();
    let off: i64 = r.windows(2).map(|w| w[0] * w[1]).sum();
    diag - off
}

/// All non-negative integer `r` with `Q(r; p) = level · depth`.
///
/// Depth-first over `r_1, r_2, …`. With `r_1 … r_j` fixed, the rest of `Q`
/// is bounded below by its minimum over unconstrained real tails, which for
/// the `A_L` Cartan form of the remaining `L` coordinates is
/// `−r_j² · L / (2(L+1))`; a branch is cut when even that exceeds the target.
pub fn solve_depth_equation(p: &[i64], level: u32, depth: u32) -> Vec<DepthSolution> {
    assert!(p.iter().all(|&x| x >= 0), "Dynkin labels must be non-negative");
    assert!(level >= 1, "level must be positive");
    let n = p.len();
    let target = level as i64 * depth as i64;
    let mut found = Vec::new();
    let mut r = Vec::with_capacity(n);
    search(p, target, 0, 0, &mut r, &mut found);

    let lam = FiniteWeight::from_dynkin(p).expect("rank >= 1");
    found
        .into_iter()
        .map(|r| {
            let mut c = lam.coords().to_vec();
            for (i, &ri) in r.iter().enumerate() {
                c[i] += ri;
                c[i + 1] -= ri;
            }
            DepthSolution { weight: FiniteWeight::from_coords(c).expect("dim >= 2"), r, depth }
        })
        .collect()
}

fn search(p: &[i64], target: i64, prev: i64, q_prefix: i64, r: &mut Vec<i64>, found: &mut Vec<Vec<i64>>) {
    let n = p.len();
    let j = r.len();
    if j == n {
        if q_prefix == target {
            found.push(r.clone());
        }
        return;
    }
    // coordinates still free after choosing r_{j+1}
    let rest = (n - j - 1) as i64;
    let pj = p[j];
    let mut x = 0i64;
    loop {
        let q = q_prefix + x * x + pj * x - prev * x;
        let bound = 2 * (rest + 1) * q - rest * x * x;
        if bound <= 2 * (rest + 1) * target {
            r.push(x);
            search(p, target, x, q, r, found);
            r.pop();
        } else if (rest + 2) * x >= (rest + 1) * (prev - pj) {
            // past the vertex of a convex quadratic in x
            break;
        }
        x += 1;
    }
}

/// Upper bound on `r_i` in any solution: `r_i² ≤ 2·k·d·i(N+1−i)/(N+1)`,
/// from `(C^{-1})_{ii} = i(N+1−i)/(N+1)` for the `A_N` Cartan matrix `C`.
pub fn coordinate_bound(rank: usize, i: usize, level: u32, depth: u32) -> i64 {
    let n1 = rank as i64 + 1;
    let num = 2 * level as i64 * depth as i64 * i as i64 * (n1 - i as i64);
    let mut b = ((num / n1) as f64).sqrt() as i64;
    while (b + 1) * (b + 1) * n1 <= num {
        b += 1;
    }
    while b > 0 && b * b * n1 > num {
        b -= 1;
    }
    b
}

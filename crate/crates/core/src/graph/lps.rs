//! Algebraic Cayley graphs X^{p,q} over projective linear groups mod q.
//!
//! For distinct primes p, q, both 1 mod 4 and q > 2 sqrt(p), the p+1
//! integer quadruples (a0,a1,a2,a3) with a0^2+a1^2+a2^2+a3^2 = p, a0 odd
//! positive and the rest even, map to invertible 2x2 matrices mod q. The
//! Cayley graph on the group they generate is (p+1)-regular with known
//! girth lower bounds. When p is a quadratic residue mod q the generators
//! stay inside the index-2 subgroup of square determinant classes, giving a
//! non-bipartite graph on q(q^2-1)/2 vertices; otherwise the full
//! projective group is generated and the graph is bipartite on q(q^2-1)
//! vertices, split by determinant class.
//!
//! Group elements are canonicalized projectively (first nonzero entry
//! scaled to 1) and vertices are numbered in lexicographic order of the
//! canonical matrices, class-major in the bipartite case, so generated
//! graphs are identical across runs and platforms.

use super::RegularGraph;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Vertex-count cap keeping ids in u32 and memory at desk scale.
const MAX_VERTICES: u64 = 20_000_000;

/// Validated parameter pair for X^{p,q}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpsParams {
    p: u64,
    q: u64,
    residue_case: bool,
}

/// Parameter validation failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpsError {
    NotPrime(u64),
    NotDistinct(u64),
    NotCongruentOneModFour(u64),
    SizeBound { p: u64, q: u64 },
    TooLarge { vertices: u64 },
}

impl fmt::Display for LpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpsError::NotPrime(n) => write!(f, "{n} is not prime"),
            LpsError::NotDistinct(n) => write!(f, "p and q must be distinct, both {n}"),
            LpsError::NotCongruentOneModFour(n) => {
                write!(f, "{n} is not congruent to 1 mod 4")
            }
            LpsError::SizeBound { p, q } => {
                write!(f, "q = {q} must exceed 2 sqrt(p) for p = {p}")
            }
            LpsError::TooLarge { vertices } => {
                write!(f, "graph would have {vertices} vertices, over the cap")
            }
        }
    }
}

impl core::error::Error for LpsError {}

impl LpsParams {
    pub fn new(p: u64, q: u64) -> Result<Self, LpsError> {
        for n in [p, q] {
            if !is_prime(n) {
                return Err(LpsError::NotPrime(n));
            }
            if n % 4 != 1 {
                return Err(LpsError::NotCongruentOneModFour(n));
            }
        }
        if p == q {
            return Err(LpsError::NotDistinct(p));
        }
        if q * q <= 4 * p {
            return Err(LpsError::SizeBound { p, q });
        }
        let residue_case = mod_pow(p % q, (q - 1) / 2, q) == 1;
        let params = LpsParams { p, q, residue_case };
        if params.vertex_count() > MAX_VERTICES {
            return Err(LpsError::TooLarge { vertices: params.vertex_count() });
        }
        Ok(params)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Whether p is a quadratic residue mod q (the non-bipartite case).
    pub fn residue_case(&self) -> bool {
        self.residue_case
    }

    pub fn degree(&self) -> usize {
        (self.p + 1) as usize
    }

    /// q(q^2-1)/2 in the residue case, q(q^2-1) otherwise.
    pub fn vertex_count(&self) -> u64 {
        let full = self.q * (self.q * self.q - 1);
        if self.residue_case {
            full / 2
        } else {
            full
        }
    }

    /// Known girth lower bound: 2 log_p q in the residue case,
    /// 4 log_p q - log_p 4 in the bipartite case.
    pub fn girth_lower_bound(&self) -> f64 {
        let lp = libm::log(self.p as f64);
        let lq = libm::log(self.q as f64);
        if self.residue_case {
            2.0 * lq / lp
        } else {
            4.0 * lq / lp - libm::log(4.0) / lp
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

fn inv_mod(a: u64, q: u64) -> u64 {
    mod_pow(a % q, q - 2, q)
}

/// Smallest square root of -1 mod q; exists because q = 1 mod 4.
fn sqrt_minus_one(q: u64) -> u64 {
    (2..q)
        .find(|&x| x * x % q == q - 1)
        .expect("q = 1 mod 4 admits a root of -1")
}

fn is_square_mod(a: u64, q: u64) -> bool {
    mod_pow(a % q, (q - 1) / 2, q) == 1
}

/// The p+1 quadruples (a0 odd positive, a1,a2,a3 even) summing by squares
/// to p, in ascending lexicographic order. The position in this list is
/// the generator's socket color.
fn generator_quadruples(p: u64) -> Vec<[i64; 4]> {
    let pi = p as i64;
    let mut quads = Vec::new();
    let evens = |limit: i64| (-limit..=limit).filter(|a| a % 2 == 0);
    let mut a0 = 1i64;
    while a0 * a0 <= pi {
        let r0 = pi - a0 * a0;
        for a1 in evens(isqrt(r0)) {
            let r1 = r0 - a1 * a1;
            for a2 in evens(isqrt(r1)) {
                let r2 = r1 - a2 * a2;
                for a3 in evens(isqrt(r2)) {
                    if a3 * a3 == r2 {
                        quads.push([a0, a1, a2, a3]);
                    }
                }
            }
        }
        a0 += 2;
    }
    assert_eq!(
        quads.len(),
        (p + 1) as usize,
        "four-square representation count must be p + 1"
    );
    quads
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = libm::sqrt(n as f64) as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// 2x2 matrix mod q stored row-major.
type Mat = [u64; 4];

fn quad_to_matrix(quad: [i64; 4], iota: u64, q: u64) -> Mat {
    let qi = q as i64;
    let m = |x: i64| x.rem_euclid(qi) as u128;
    let qw = q as u128;
    let i = iota as u128;
    [
        ((m(quad[0]) + i * m(quad[1])) % qw) as u64,
        ((m(quad[2]) + i * m(quad[3])) % qw) as u64,
        ((m(-quad[2]) + i * m(quad[3])) % qw) as u64,
        ((m(quad[0]) + i * m(-quad[1])) % qw) as u64,
    ]
}

fn mat_mul(a: &Mat, b: &Mat, q: u64) -> Mat {
    let qw = q as u128;
    let mul = |x: u64, y: u64| x as u128 * y as u128 % qw;
    [
        ((mul(a[0], b[0]) + mul(a[1], b[2])) % qw) as u64,
        ((mul(a[0], b[1]) + mul(a[1], b[3])) % qw) as u64,
        ((mul(a[2], b[0]) + mul(a[3], b[2])) % qw) as u64,
        ((mul(a[2], b[1]) + mul(a[3], b[3])) % qw) as u64,
    ]
}

fn mat_det(m: &Mat, q: u64) -> u64 {
    let qw = q as u128;
    let prod = |x: u64, y: u64| x as u128 * y as u128 % qw;
    ((prod(m[0], m[3]) + qw - prod(m[1], m[2])) % qw) as u64
}

/// Projective canonical form: first nonzero entry scaled to 1.
fn canonicalize(m: &Mat, q: u64) -> Mat {
    let lead = m.iter().copied().find(|&x| x != 0).expect("invertible matrix");
    let inv = inv_mod(lead, q);
    let qw = q as u128;
    let mut out = [0u64; 4];
    for (o, &x) in out.iter_mut().zip(m.iter()) {
        *o = (x as u128 * inv as u128 % qw) as u64;
    }
    out
}

/// Generated group with per-generator arcs, vertices in canonical order.
struct CayleyClosure {
    /// arcs[v][k] = target of applying generator k to vertex v.
    arcs: Vec<Vec<u32>>,
    /// 0 if the vertex's determinant class is a square, 1 otherwise.
    det_class: Vec<u8>,
}

fn cayley_closure(params: &LpsParams) -> CayleyClosure {
    let q = params.q;
    let iota = sqrt_minus_one(q);
    let generators: Vec<Mat> = generator_quadruples(params.p)
        .into_iter()
        .map(|quad| quad_to_matrix(quad, iota, q))
        .collect();

    let identity: Mat = [1, 0, 0, 1];
    let mut discovered: BTreeMap<Mat, ()> = BTreeMap::new();
    discovered.insert(canonicalize(&identity, q), ());
    let mut frontier: Vec<Mat> = alloc::vec![canonicalize(&identity, q)];
    while let Some(g) = frontier.pop() {
        for s in &generators {
            let h = canonicalize(&mat_mul(&g, s, q), q);
            if discovered.insert(h, ()).is_none() {
                frontier.push(h);
            }
        }
    }
    assert_eq!(
        discovered.len() as u64,
        params.vertex_count(),
        "closure size must match the group-order formula"
    );

    // Bipartite case: left class (square determinants) first, each class
    // in lexicographic order. The BTreeMap already iterates
    // lexicographically.
    let mut vertices: Vec<Mat> = Vec::with_capacity(discovered.len());
    if params.residue_case {
        vertices.extend(discovered.keys().copied());
    } else {
        for class_wanted in [true, false] {
            vertices.extend(
                discovered
                    .keys()
                    .copied()
                    .filter(|m| is_square_mod(mat_det(m, q), q) == class_wanted),
            );
        }
    }
    let index: BTreeMap<Mat, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i as u32))
        .collect();

    let arcs: Vec<Vec<u32>> = vertices
        .iter()
        .map(|g| {
            generators
                .iter()
                .map(|s| index[&canonicalize(&mat_mul(g, s, q), q)])
                .collect()
        })
        .collect();
    let det_class: Vec<u8> = vertices
        .iter()
        .map(|m| if is_square_mod(mat_det(m, q), q) { 0 } else { 1 })
        .collect();
    CayleyClosure { arcs, det_class }
}

/// Generates X^{p,q}.
///
/// Residue case: non-bipartite, uncolored (generator pairs repeat colors at
/// a vertex, so no proper coloring from the generating set exists).
/// Non-residue case: bipartite with the square-determinant class on the
/// left, and each edge colored by the generator that produces it from its
/// left endpoint; the coloring is proper.
pub fn lps_generate(params: &LpsParams) -> RegularGraph {
    let closure = cayley_closure(params);
    let n = closure.arcs.len();
    let degree = params.degree();
    if params.residue_case {
        let mut edges = Vec::with_capacity(n * degree / 2);
        for (v, targets) in closure.arcs.iter().enumerate() {
            for &t in targets {
                debug_assert_ne!(t as usize, v, "generators are never scalar");
                if (v as u32) < t {
                    edges.push((v as u32, t));
                }
            }
        }
        RegularGraph::from_edges(n, degree, edges, None, None)
            .expect("Cayley graph construction is regular")
    } else {
        let left = closure.det_class.iter().filter(|&&c| c == 0).count();
        assert_eq!(2 * left, n, "determinant classes halve the group");
        let mut edges = Vec::with_capacity(left * degree);
        let mut colors = Vec::with_capacity(left * degree);
        for v in 0..left {
            for (k, &t) in closure.arcs[v].iter().enumerate() {
                debug_assert_eq!(closure.det_class[t as usize], 1);
                edges.push((v as u32, t));
                colors.push(k as u32 + 1);
            }
        }
        RegularGraph::from_edges(n, degree, edges, Some(left), Some(colors))
            .expect("Cayley graph construction is regular and properly colored")
    }
}

/// Bipartite colored source graph for node splitting, for either case.
///
/// Non-residue parameters give X^{p,q} itself. Residue parameters give the
/// bipartite double cover of X^{p,q} with arcs as edges: vertex g splits
/// into g0 (left) and g1 (right), and applying generator k to g yields the
/// edge (g0, (g s_k)1) of color k. The cover equals `double_cover` of the
/// residue graph edge-for-edge, but carries the generator coloring that the
/// undirected graph cannot.
pub fn lps_bipartite(params: &LpsParams) -> RegularGraph {
    if !params.residue_case {
        return lps_generate(params);
    }
    let closure = cayley_closure(params);
    let n = closure.arcs.len();
    let degree = params.degree();
    let mut edges = Vec::with_capacity(n * degree);
    let mut colors = Vec::with_capacity(n * degree);
    for (v, targets) in closure.arcs.iter().enumerate() {
        for (k, &t) in targets.iter().enumerate() {
            edges.push((v as u32, t + n as u32));
            colors.push(k as u32 + 1);
        }
    }
    RegularGraph::from_edges(2 * n, degree, edges, Some(n), Some(colors))
        .expect("arc cover is regular and properly colored")
}

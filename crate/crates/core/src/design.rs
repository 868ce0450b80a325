//! Pairwise sequential assignment engine.
//!
//! Subjects arrive in pairs. Before pair `m + 1` is assigned only the
//! upper-left `2m + 2` block of the adjacency matrix is visible, and the
//! engine keeps the signed imbalance vector `S = A^(2m) tau` up to date so
//! that both candidate assignments for the new pair are scored in O(m).
//!
//! Signs follow `tau_i = 1 - 2 T_i`: treatment 0 is `+1`, treatment 1 is `-1`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{contract, param, Result};
use crate::graph::{Adjacency, Graph, RevealedView, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    Adaptive,
    Random,
}

impl Policy {
    pub fn as_str(self) -> &'static str {
        match self {
            Policy::Adaptive => "adaptive",
            Policy::Random => "random",
        }
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

/// Policy, biasing probability and seed of one design run.
///
/// The random policy is the biased coin with `bias = 1/2`; both policies
/// share one code path and draw the same number of uniforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignConfig {
    pub policy: Policy,
    pub bias: f64,
    pub seed: u64,
}

impl DesignConfig {
    pub fn adaptive(bias: f64, seed: u64) -> Result<Self> {
        let cfg = DesignConfig {
            policy: Policy::Adaptive,
            bias,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn random(seed: u64) -> Self {
        DesignConfig {
            policy: Policy::Random,
            bias: 0.5,
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        DesignConfig { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        match self.policy {
            Policy::Random => Ok(()),
            Policy::Adaptive if self.bias > 0.5 && self.bias <= 1.0 => Ok(()),
            Policy::Adaptive => Err(param(format!(
                "biasing probability must lie in (1/2, 1], got {}",
                self.bias
            ))),
        }
    }

    /// Probability of picking the lower-imbalance candidate.
    pub fn effective_bias(&self) -> f64 {
        match self.policy {
            Policy::Adaptive => self.bias,
            Policy::Random => 0.5,
        }
    }
}

/// Assignment signs in {-1, +1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(i) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(param(format!("sign at {i} is not +1 or -1")));
        }
        Ok(SignVector(signs))
    }

    /// From treatments in {0, 1}.
    pub fn from_treatments(treatments: &[u8]) -> Result<Self> {
        treatments
            .iter()
            .map(|&t| match t {
                0 => Ok(1),
                1 => Ok(-1),
                other => Err(param(format!("treatment {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(SignVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn treatments(&self) -> Vec<u8> {
        self.0.iter().map(|&s| u8::from(s < 0)).collect()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| -s).collect())
    }

    /// Every complete pair holds opposite signs.
    pub fn is_pairwise_balanced(&self) -> bool {
        self.0.chunks_exact(2).all(|p| p[0] + p[1] == 0)
    }
}

/// Signs assigned so far, the signed imbalance vector over the revealed
/// block and its squared norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignState<V> {
    signs: Vec<i8>,
    imbalance: Vec<V>,
    squared: V,
}

impl<V: Scalar> DesignState<V> {
    pub fn empty() -> Self {
        DesignState {
            signs: Vec::new(),
            imbalance: Vec::new(),
            squared: V::ZERO,
        }
    }

    /// Completed pairs.
    pub fn pairs(&self) -> usize {
        self.signs.len() / 2
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `S = A^(2m) tau_{1:2m}`.
    pub fn imbalance_vector(&self) -> &[V] {
        &self.imbalance
    }

    /// `I^2 = |S|^2`; exact for binary graphs.
    pub fn squared(&self) -> V {
        self.squared
    }

    pub fn imbalance(&self) -> f64 {
        self.squared.to_f64().sqrt()
    }
}

/// What a new pair reveals, relative to the current state.
///
/// For a state over `2m` subjects and new subjects `2m, 2m + 1`
/// (zero-based): `diff[i] = A[i][2m+1] - A[i][2m]`, `z_first` and
/// `z_second` are the new rows' prefixes dotted with the current signs,
/// and `corner = A[2m][2m+1]`. `z_second - z_first = tau . diff` holds
/// by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PairIncrement<V> {
    pub diff: Vec<V>,
    pub z_first: V,
    pub z_second: V,
    pub corner: V,
    pub diag_first: V,
    pub diag_second: V,
}

impl<V: Scalar> PairIncrement<V> {
    /// Reads the two newest rows of `view`, which must reveal exactly
    /// `signs.len() + 2` subjects.
    pub fn observe<G>(view: &RevealedView<'_, G>, signs: &[i8]) -> Result<Self>
    where
        G: Adjacency<Value = V> + ?Sized,
    {
        let mut inc = PairIncrement {
            diff: Vec::new(),
            z_first: V::ZERO,
            z_second: V::ZERO,
            corner: V::ZERO,
            diag_first: V::ZERO,
            diag_second: V::ZERO,
        };
        let mut scratch = Vec::new();
        inc.refill(view, signs, &mut scratch)?;
        Ok(inc)
    }

    fn refill<G>(&mut self, view: &RevealedView<'_, G>, signs: &[i8], scratch: &mut Vec<V>) -> Result<()>
    where
        G: Adjacency<Value = V> + ?Sized,
    {
        let len = signs.len();
        if view.revealed() != len + 2 {
            return Err(contract(format!(
                "increment over {len} assigned subjects needs {} revealed, view has {}",
                len + 2,
                view.revealed()
            )));
        }
        view.row_prefix(len, len, scratch);
        view.row_prefix(len + 1, len, &mut self.diff);
        let mut z_first = V::ZERO;
        let mut z_second = V::ZERO;
        for ((d, &first), &s) in self.diff.iter_mut().zip(scratch.iter()).zip(signs) {
            z_first += first.signed(s);
            z_second += d.signed(s);
            *d = *d - first;
        }
        self.z_first = z_first;
        self.z_second = z_second;
        self.corner = view.entry(len, len + 1);
        self.diag_first = view.entry(len, len);
        self.diag_second = view.entry(len + 1, len + 1);
        Ok(())
    }
}

/// Squared imbalance for each assignment of the new pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidates<V> {
    /// New pair gets treatments (0, 1), signs (+1, -1).
    pub zero_one: V,
    /// New pair gets treatments (1, 0), signs (-1, +1).
    pub one_zero: V,
}

// `second` is the sign of the later subject of the pair; the earlier one gets `-second`.
fn candidate<V: Scalar>(state: &DesignState<V>, inc: &PairIncrement<V>, dot: V, diff_sq: V, second: i8) -> V {
    let first = -second;
    let a = inc.corner;
    let new_first = inc.z_first + inc.diag_first.signed(first) + a.signed(second);
    let new_second = inc.z_second + a.signed(first) + inc.diag_second.signed(second);
    let two_dot = dot + dot;
    state.squared + two_dot.signed(second) + diff_sq + new_first.square() + new_second.square()
}

/// Scores both assignments of the next pair in O(m) using
/// `|S + s Y|^2 = |S|^2 + 2 s S.Y + |Y|^2` plus the two new coordinates.
pub fn candidate_imbalances<V: Scalar>(state: &DesignState<V>, inc: &PairIncrement<V>) -> Result<Candidates<V>> {
    if inc.diff.len() != state.signs.len() {
        return Err(contract(format!(
            "increment covers {} subjects, state has {}",
            inc.diff.len(),
            state.signs.len()
        )));
    }
    let mut dot = V::ZERO;
    let mut diff_sq = V::ZERO;
    for (&s, &y) in state.imbalance.iter().zip(&inc.diff) {
        dot += s * y;
        diff_sq += y * y;
    }
    Ok(Candidates {
        zero_one: candidate(state, inc, dot, diff_sq, -1),
        one_zero: candidate(state, inc, dot, diff_sq, 1),
    })
}

/// Whether the (0, 1) assignment is taken, given one uniform draw `u` in [0, 1).
fn picks_zero_one<V: Scalar>(c: &Candidates<V>, bias: f64, u: f64) -> bool {
    let p = if c.zero_one < c.one_zero {
        bias
    } else if c.zero_one > c.one_zero {
        1.0 - bias
    } else {
        0.5
    };
    u < p
}

fn apply<V: Scalar>(mut state: DesignState<V>, inc: &PairIncrement<V>, second: i8) -> DesignState<V> {
    let first = -second;
    let mut squared = V::ZERO;
    for (s, &y) in state.imbalance.iter_mut().zip(&inc.diff) {
        *s += y.signed(second);
        squared += s.square();
    }
    let a = inc.corner;
    let new_first = inc.z_first + inc.diag_first.signed(first) + a.signed(second);
    let new_second = inc.z_second + a.signed(first) + inc.diag_second.signed(second);
    squared += new_first.square() + new_second.square();
    state.imbalance.push(new_first);
    state.imbalance.push(new_second);
    state.signs.push(first);
    state.signs.push(second);
    state.squared = squared;
    state
}

/// Assigns the first two subjects opposite treatments by fair coin.
pub fn assign_first_pair<G, R>(view: &RevealedView<'_, G>, rng: &mut R) -> Result<DesignState<G::Value>>
where
    G: Adjacency + ?Sized,
    R: RngCore + ?Sized,
{
    if view.revealed() != 2 {
        return Err(contract(format!(
            "first pair needs 2 revealed subjects, view has {}",
            view.revealed()
        )));
    }
    let inc = PairIncrement::observe(view, &[])?;
    let u: f64 = rng.random();
    let second = if u < 0.5 { -1 } else { 1 };
    Ok(apply(DesignState::empty(), &inc, second))
}

/// One biased-coin step: the strictly smaller candidate is taken with
/// probability `bias`, the larger with `1 - bias`, an exact tie by fair
/// coin. Exactly one uniform is drawn.
pub fn step<V, R>(
    state: DesignState<V>,
    inc: &PairIncrement<V>,
    cfg: &DesignConfig,
    rng: &mut R,
) -> Result<DesignState<V>>
where
    V: Scalar,
    R: RngCore + ?Sized,
{
    cfg.validate()?;
    let cands = candidate_imbalances(&state, inc)?;
    let u: f64 = rng.random();
    let second = if picks_zero_one(&cands, cfg.effective_bias(), u) {
        -1
    } else {
        1
    };
    let next = apply(state, inc, second);
    debug_assert!(!V::EXACT || next.squared == if second < 0 { cands.zero_one } else { cands.one_zero });
    Ok(next)
}

/// Result of a full design run.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignRun<V> {
    pub signs: SignVector,
    /// `I^2` after each completed pair: `I_2^2, I_4^2, ...`.
    pub squared: Vec<V>,
    /// `I_n^2` with the convention `I_{2m+1} = I_{2m}` for odd `n`.
    pub reported_squared: V,
    /// `|A tau|^2` over the full matrix, including an odd trailing subject.
    pub full_squared: V,
}

impl<V: Scalar> DesignRun<V> {
    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn imbalance(&self) -> f64 {
        self.reported_squared.to_f64().sqrt()
    }

    pub fn trajectory(&self) -> Vec<f64> {
        self.squared.iter().map(|s| s.to_f64().sqrt()).collect()
    }

    fn into_f64(self) -> DesignRun<f64> {
        DesignRun {
            signs: self.signs,
            squared: self.squared.iter().map(|s| s.to_f64()).collect(),
            reported_squared: self.reported_squared.to_f64(),
            full_squared: self.full_squared.to_f64(),
        }
    }
}

/// Runs the design over all subjects in index order, seeding the coin from
/// `cfg.seed`.
pub fn run_design_on<G: Adjacency + ?Sized>(g: &G, cfg: &DesignConfig) -> Result<DesignRun<G::Value>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    run_design_observed(g, cfg, &mut rng, |_| {})
}

/// Runs the design on either kind of graph; squared values of a binary
/// graph convert to `f64` without loss.
pub fn run_design(g: &Graph, cfg: &DesignConfig) -> Result<DesignRun<f64>> {
    match g {
        Graph::Binary(b) => run_design_on(b, cfg).map(DesignRun::into_f64),
        Graph::Weighted(w) => run_design_on(w, cfg),
    }
}

/// Runs the design with a caller-supplied random stream, calling `observe`
/// with the state after every completed pair.
pub fn run_design_observed<G, R, F>(
    g: &G,
    cfg: &DesignConfig,
    rng: &mut R,
    mut observe: F,
) -> Result<DesignRun<G::Value>>
where
    G: Adjacency + ?Sized,
    R: RngCore + ?Sized,
    F: FnMut(&DesignState<G::Value>),
{
    cfg.validate()?;
    let n = g.n();
    if n < 2 {
        return Err(param(format!("design needs at least 2 subjects, got {n}")));
    }
    let mut view = RevealedView::new(g);
    view.reveal(2);
    let mut state = assign_first_pair(&view, rng)?;
    observe(&state);
    let mut squared = Vec::with_capacity(n / 2);
    squared.push(state.squared);

    let mut inc = PairIncrement::observe(&view, &[])?;
    let mut scratch = Vec::with_capacity(n);
    while state.signs.len() + 2 <= n {
        view.reveal(state.signs.len() + 2);
        inc.refill(&view, &state.signs, &mut scratch)?;
        state = step(state, &inc, cfg, rng)?;
        observe(&state);
        squared.push(state.squared);
    }

    let reported_squared = state.squared;
    let mut full_squared = reported_squared;
    let DesignState {
        mut signs,
        mut imbalance,
        ..
    } = state;
    if signs.len() < n {
        // odd n: last subject by fair coin
        let u: f64 = rng.random();
        let last_sign: i8 = if u < 0.5 { 1 } else { -1 };
        let last = n - 1;
        view.reveal(n);
        view.row_prefix(last, n, &mut scratch);
        let mut tail = scratch[last].signed(last_sign);
        full_squared = G::Value::ZERO;
        for ((s, &a), &t) in imbalance.iter_mut().zip(&scratch).zip(&signs) {
            *s += a.signed(last_sign);
            full_squared += s.square();
            tail += a.signed(t);
        }
        full_squared += tail.square();
        imbalance.push(tail);
        signs.push(last_sign);
    }

    Ok(DesignRun {
        signs: SignVector(signs),
        squared,
        reported_squared,
        full_squared,
    })
}

/// `|A^(upto) tau_{1:upto}|^2` by a direct dense multiply.
pub fn imbalance_recompute<G: Adjacency + ?Sized>(g: &G, signs: &[i8], upto: usize) -> Result<G::Value> {
    if upto > signs.len() || upto > g.n() {
        return Err(contract(format!(
            "prefix {upto} exceeds signs ({}) or graph ({})",
            signs.len(),
            g.n()
        )));
    }
    let mut total = G::Value::ZERO;
    for i in 0..upto {
        let mut row = G::Value::ZERO;
        for (j, &s) in signs[..upto].iter().enumerate() {
            row += g.entry(i, j).signed(s);
        }
        total += row.square();
    }
    Ok(total)
}

/// `|A tau|^2` over the whole graph.
pub fn full_imbalance<G: Adjacency + ?Sized>(g: &G, signs: &SignVector) -> Result<G::Value> {
    if signs.len() != g.n() {
        return Err(contract(format!("{} signs for {} subjects", signs.len(), g.n())));
    }
    imbalance_recompute(g, signs.as_slice(), g.n())
}

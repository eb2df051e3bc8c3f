use crate::quadfield::{FieldContext, Xi};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Unit orbits of totally positive `ξ ∈ 𝔡⁻¹` whose minimal trace is at most `n`,
/// together with every orbit element of trace at most `n`.
///
/// Orbits are ordered by `(Tr, first embedding)` of their minimal-trace
/// element, so the table for a smaller bound is a prefix of this one.
#[derive(Debug)]
pub struct OrbitTable {
    ctx: FieldContext,
    n: i64,
    reps: Vec<Xi>,
    min_elems: Vec<Xi>,
    members: Vec<Vec<Xi>>,
    rep_index: HashMap<Xi, usize>,
    full: Vec<(Xi, usize)>,
    full_index: HashMap<Xi, usize>,
}

impl PartialEq for OrbitTable {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.n == o.n
    }
}

impl OrbitTable {
    /// Shared table for `(ctx, n)`.
    pub fn get(ctx: &FieldContext, n: i64) -> Arc<OrbitTable> {
        static CACHE: OnceLock<Mutex<HashMap<(i64, i64), Arc<OrbitTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().unwrap().get(&(ctx.discriminant(), n)) {
            return t.clone();
        }
        let t = Arc::new(OrbitTable::build(ctx, n));
        cache.lock().unwrap().entry((ctx.discriminant(), n)).or_insert(t).clone()
    }

    fn build(ctx: &FieldContext, n: i64) -> Self {
        let all = ctx.enumerate_tp_invdiff_xi(n.max(0), false);
        let mut by_min: HashMap<Xi, Vec<Xi>> = HashMap::new();
        for &x in &all {
            by_min.entry(ctx.xi_min_trace(x)).or_default().push(x);
        }
        let mut mins: Vec<Xi> = by_min.keys().copied().collect();
        mins.sort_by_key(|m| (m.q, m.p));
        let mut reps = Vec::with_capacity(mins.len());
        let mut members = Vec::with_capacity(mins.len());
        let mut rep_index = HashMap::new();
        let mut full_index = HashMap::new();
        for (i, m) in mins.iter().enumerate() {
            let r = ctx.xi_reduce(*m);
            rep_index.insert(r, i);
            reps.push(r);
            let mut elems = by_min.remove(m).unwrap();
            elems.sort_by_key(|x| (x.q, x.p));
            for &x in &elems {
                full_index.insert(x, i);
            }
            members.push(elems);
        }
        let full = all.iter().map(|x| (*x, full_index[x])).collect();
        OrbitTable { ctx: ctx.clone(), n, reps, min_elems: mins, members, rep_index, full, full_index }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn trace_bound(&self) -> i64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Unit-reduced representative of orbit `i`.
    pub fn rep(&self, i: usize) -> Xi {
        self.reps[i]
    }

    pub fn reps(&self) -> &[Xi] {
        &self.reps
    }

    /// Minimal-trace element of orbit `i`.
    pub fn min_elem(&self, i: usize) -> Xi {
        self.min_elems[i]
    }

    /// Orbit elements with trace at most the bound.
    pub fn members(&self, i: usize) -> &[Xi] {
        &self.members[i]
    }

    /// All elements with trace at most the bound, with their orbit indices,
    /// sorted by `(Tr, first embedding)`.
    pub fn full(&self) -> &[(Xi, usize)] {
        &self.full
    }

    /// Orbit of an element within the trace box.
    pub fn orbit_of_full(&self, x: Xi) -> Option<usize> {
        self.full_index.get(&x).copied()
    }

    /// Orbit of an arbitrary totally positive `ξ`, if its orbit is in range.
    pub fn orbit_of(&self, x: Xi) -> Option<usize> {
        if let Some(&i) = self.full_index.get(&x) {
            return Some(i);
        }
        if !self.ctx.xi_is_tp(x) {
            return None;
        }
        self.rep_index.get(&self.ctx.xi_reduce(x)).copied()
    }

    /// Number of orbits whose minimal trace is at most `t`.
    pub fn prefix_len(&self, t: i64) -> usize {
        self.min_elems.partition_point(|m| m.q <= t)
    }
}

//! Numeric search for witness points.
//!
//! A witness point for (included I, excluded X) is a spacetime point lying
//! inside the future lightcone of every event in I and strictly outside the
//! future lightcone of every event in X. At a spatial point `p` such a time
//! exists iff
//!
//! ```text
//! gap(p) = min_{x in X} (t_x + |p - p_x|/c)  -  max_{i in I} (t_i + |p - p_i|/c) > 0
//! ```
//!
//! and the earliest admissible time is the included maximum. The search is a
//! branch-and-bound over axis-aligned cells (on the perpendicular bisector
//! plane of a designated pair, or over full 3-space). Light arrivals are
//! `1/c`-Lipschitz in the spatial point, so both the gap and the objectives
//! admit rigorous cell bounds; cells are refined down to a coordinate
//! tolerance of `1e-9` relative to the scene scale.

use super::{Event, Vec3};
use crate::num::Real;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WitnessError {
    #[error("included event set must be non-empty")]
    NoIncludedEvents,
    #[error("equidistant pair is degenerate (coincident positions)")]
    DegeneratePair,
    #[error("search domain is unbounded in a feasible direction; no finite witness located")]
    UnboundedDomain,
    #[error("cell budget exhausted before the domain was resolved")]
    BudgetExhausted,
}

/// Result of a witness search: a strictly valid point, or a certificate that
/// none exists on the searched domain.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessOutcome<R> {
    Found(Event<R>),
    NotFound,
}

/// Configured search over witness points.
pub struct WitnessSearch<'a, R: Real> {
    included: &'a [Event<R>],
    excluded: &'a [Event<R>],
    c: R,
    origin: Vec3<R>,
    basis: Vec<Vec3<R>>,
    scale: R,
}

struct Cell<R> {
    coords: Vec<R>,
    half: R,
}

impl<'a, R: Real> WitnessSearch<'a, R> {
    /// Build a search. With `equidistant_pair = Some((p, q))` the domain is
    /// the perpendicular bisector plane of the two events' positions.
    pub fn new(
        included: &'a [Event<R>],
        excluded: &'a [Event<R>],
        equidistant_pair: Option<(&Event<R>, &Event<R>)>,
        c: R,
    ) -> Result<Self, WitnessError> {
        if included.is_empty() {
            return Err(WitnessError::NoIncludedEvents);
        }
        let (origin, basis) = match equidistant_pair {
            Some((p, q)) => {
                let normal = q
                    .position
                    .sub(&p.position)
                    .normalized()
                    .ok_or(WitnessError::DegeneratePair)?;
                let mid = p.position.add(&q.position).scale(R::from_f64(0.5).unwrap());
                (mid, plane_basis(&normal))
            }
            None => (
                Vec3::zero(),
                vec![
                    Vec3::new(R::one(), R::zero(), R::zero()),
                    Vec3::new(R::zero(), R::one(), R::zero()),
                    Vec3::new(R::zero(), R::zero(), R::one()),
                ],
            ),
        };
        let mut spread = R::zero();
        let mut tmin = R::infinity();
        let mut tmax = R::neg_infinity();
        for e in included.iter().chain(excluded.iter()) {
            spread = spread.max(e.position.distance(&origin));
            tmin = tmin.min(e.time);
            tmax = tmax.max(e.time);
        }
        let scale = spread + c * (tmax - tmin) + R::one();
        Ok(Self {
            included,
            excluded,
            c,
            origin,
            basis,
            scale,
        })
    }

    fn point(&self, coords: &[R]) -> Vec3<R> {
        let mut p = self.origin;
        for (coef, axis) in coords.iter().zip(&self.basis) {
            p = p.add(&axis.scale(*coef));
        }
        p
    }

    /// Earliest admissible time at `p` (max of included arrivals).
    fn earliest_time(&self, p: &Vec3<R>) -> R {
        self.included
            .iter()
            .map(|e| e.light_arrival(p, self.c))
            .fold(R::neg_infinity(), R::max)
    }

    /// Feasibility gap; positive iff a witness time exists at `p`.
    fn gap(&self, p: &Vec3<R>) -> R {
        let t_in = self.earliest_time(p);
        let t_out = self
            .excluded
            .iter()
            .map(|e| e.light_arrival(p, self.c))
            .fold(R::infinity(), R::min);
        t_out - t_in
    }

    /// Certified emptiness shortcut: if some included event already lies in
    /// an excluded future cone, every candidate does too (cones nest).
    fn contained_in_excluded(&self) -> bool {
        self.excluded.iter().any(|x| {
            self.included
                .iter()
                .any(|i| super::in_future_lightcone(i, x, self.c))
        })
    }

    /// Directional gap at infinity along unit direction `u`.
    fn asymptotic_gap(&self, u: &Vec3<R>) -> R {
        let out = self
            .excluded
            .iter()
            .map(|e| e.time - u.dot(&e.position) / self.c)
            .fold(R::infinity(), R::min);
        let inn = self
            .included
            .iter()
            .map(|e| e.time - u.dot(&e.position) / self.c)
            .fold(R::neg_infinity(), R::max);
        out - inn
    }

    fn any_feasible_direction(&self) -> bool {
        if self.excluded.is_empty() {
            return false;
        }
        let n = 4096;
        match self.basis.len() {
            2 => (0..n).any(|k| {
                let ang = R::from_f64(2.0 * std::f64::consts::PI * k as f64 / n as f64).unwrap();
                let u = self.basis[0]
                    .scale(ang.cos())
                    .add(&self.basis[1].scale(ang.sin()));
                self.asymptotic_gap(&u) > R::zero()
            }),
            _ => (0..n).any(|k| {
                // Fibonacci sphere
                let kf = R::from_f64(k as f64 + 0.5).unwrap();
                let nf = R::from_f64(n as f64).unwrap();
                let cos_t = R::one() - (kf + kf) / nf;
                let sin_t = (R::one() - cos_t * cos_t).max(R::zero()).sqrt();
                let golden = R::from_f64(std::f64::consts::PI * (3.0 - 5.0_f64.sqrt())).unwrap();
                let phi = golden * kf;
                let u = Vec3::new(sin_t * phi.cos(), sin_t * phi.sin(), cos_t);
                self.asymptotic_gap(&u) > R::zero()
            }),
        }
    }

    /// Grid seed: best strictly feasible center on a coarse lattice.
    fn coarse_scan<F>(&self, width: R, objective: &F) -> Option<(Vec<R>, R)>
    where
        F: Fn(&Vec3<R>) -> R,
    {
        let dims = self.basis.len();
        let n: i64 = if dims == 2 { 128 } else { 32 };
        let mut best: Option<(Vec<R>, R)> = None;
        let mut idx = vec![0i64; dims];
        loop {
            let coords: Vec<R> = idx
                .iter()
                .map(|&i| {
                    width * (R::from_f64(2.0 * i as f64 / n as f64).unwrap() - R::one())
                })
                .collect();
            let p = self.point(&coords);
            if self.gap(&p) > R::zero() {
                let f = objective(&p);
                if best.as_ref().map_or(true, |(_, bf)| f < *bf) {
                    best = Some((coords.clone(), f));
                }
            }
            // odometer
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] <= n {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == dims {
                    return best;
                }
            }
        }
    }

    /// Branch-and-bound minimization of `objective` over the feasible set.
    ///
    /// `sublevel_halfwidth(f)` must return a domain half-width guaranteed to
    /// contain every feasible point with objective value `<= f`, so that an
    /// incumbent makes the search provably global.
    fn minimize<F, G>(
        &self,
        objective: F,
        obj_lipschitz: R,
        sublevel_halfwidth: G,
    ) -> Result<Option<(Vec3<R>, R)>, WitnessError>
    where
        F: Fn(&Vec3<R>) -> R,
        G: Fn(R) -> R,
    {
        if self.contained_in_excluded() {
            return Ok(None);
        }
        let dims = self.basis.len();
        let diag = R::from_f64((dims as f64).sqrt()).unwrap();
        let gap_lip = (R::one() + R::one()) / self.c;
        let tol = R::from_f64(1e-9).unwrap() * self.scale;
        let budget: u64 = 30_000_000;

        let mut width = R::from_f64(64.0).unwrap() * self.scale;
        for attempt in 0..3 {
            let mut best = self.coarse_scan(width, &objective);
            if let Some((_, f)) = &best {
                // widen once so the sublevel set of the incumbent is covered
                let need = sublevel_halfwidth(*f);
                if need > width {
                    width = need + self.scale;
                    best = self.coarse_scan(width, &objective);
                }
            }
            let mut evals: u64 = 0;
            let mut cells = vec![Cell {
                coords: vec![R::zero(); dims],
                half: width,
            }];
            while !cells.is_empty() {
                let mut next = Vec::new();
                for cell in &cells {
                    evals += 1;
                    if evals > budget {
                        return Err(WitnessError::BudgetExhausted);
                    }
                    let p = self.point(&cell.coords);
                    let g = self.gap(&p);
                    let f = objective(&p);
                    let reach = cell.half * diag;
                    if g > R::zero() && best.as_ref().map_or(true, |(_, bf)| f < *bf) {
                        best = Some((cell.coords.clone(), f));
                    }
                    // can this cell still contain a feasible point?
                    if g + gap_lip * reach <= R::zero() {
                        continue;
                    }
                    // can it still improve on the incumbent?
                    if let Some((_, bf)) = &best {
                        if f - obj_lipschitz * reach >= *bf {
                            continue;
                        }
                    }
                    if cell.half <= tol {
                        continue;
                    }
                    let h = cell.half * R::from_f64(0.5).unwrap();
                    for mask in 0..(1usize << dims) {
                        let mut coords = cell.coords.clone();
                        for (d, coord) in coords.iter_mut().enumerate() {
                            let sign = if mask >> d & 1 == 1 { R::one() } else { -R::one() };
                            *coord = *coord + sign * h;
                        }
                        next.push(Cell { coords, half: h });
                    }
                }
                cells = next;
            }
            if let Some((coords, f)) = best {
                return Ok(Some((self.point(&coords), f)));
            }
            // nothing on this domain; grow only if the far field could help
            if !self.any_feasible_direction() {
                return Ok(None);
            }
            if attempt == 2 {
                break;
            }
            width = width * R::from_f64(8.0).unwrap();
        }
        Err(WitnessError::UnboundedDomain)
    }

    /// Minimum preferred-frame time witness (ties broken by distance to the
    /// excluded events' centroid). `NotFound` certifies emptiness over the
    /// searched domain.
    pub fn find_min_time(&self) -> Result<WitnessOutcome<R>, WitnessError> {
        // apex shortcut: a single included cone with no exclusions has its
        // minimum at the apex itself
        if self.excluded.is_empty() && self.included.len() == 1 {
            return Ok(WitnessOutcome::Found(self.included[0].clone()));
        }
        let centroid = if self.excluded.is_empty() {
            Vec3::zero()
        } else {
            let mut acc = Vec3::zero();
            for e in self.excluded {
                acc = acc.add(&e.position);
            }
            acc.scale(R::one() / R::from_f64(self.excluded.len() as f64).unwrap())
        };
        // lexicographic objective: time, then distance to the excluded
        // centroid, folded in with a weight too small to disturb the time
        // minimization beyond the achieved tolerance
        let tie_weight = R::from_f64(1e-7).unwrap() / self.scale;
        let obj = move |p: &Vec3<R>| self.earliest_time(p) + tie_weight * p.distance(&centroid);
        let lip = R::one() / self.c + tie_weight;
        let t_floor = self
            .included
            .iter()
            .map(|e| e.time)
            .fold(R::infinity(), R::min);
        let c = self.c;
        let scale = self.scale;
        let sublevel = move |f: R| c * (f - t_floor) + scale + scale;
        match self.minimize(obj, lip, sublevel)? {
            Some((p, _)) => {
                let t = self.earliest_time(&p);
                Ok(WitnessOutcome::Found(Event::new("witness", p, t)))
            }
            None => Ok(WitnessOutcome::NotFound),
        }
    }

    /// Minimum Euclidean distance from `anchor` to the witness locus,
    /// together with the minimizing point. `None` when the locus is empty.
    pub fn min_distance_to(&self, anchor: &Vec3<R>) -> Result<Option<(R, Event<R>)>, WitnessError> {
        let offset = anchor.distance(&self.origin);
        let scale = self.scale;
        match self.minimize(
            |p| p.distance(anchor),
            R::one(),
            move |f| f + offset + scale,
        )? {
            Some((p, f)) => {
                let t = self.earliest_time(&p);
                Ok(Some((f, Event::new("witness", p, t))))
            }
            None => Ok(None),
        }
    }
}

/// Find a witness point inside every included future cone and strictly
/// outside every excluded one, constrained to the perpendicular bisector
/// plane of `equidistant_pair` when given. Returns the point of minimal
/// preferred-frame time.
pub fn find_witness_point<R: Real>(
    included: &[Event<R>],
    excluded: &[Event<R>],
    equidistant_pair: Option<(&Event<R>, &Event<R>)>,
    c: R,
) -> Result<WitnessOutcome<R>, WitnessError> {
    WitnessSearch::new(included, excluded, equidistant_pair, c)?.find_min_time()
}

/// Two orthonormal vectors spanning the plane orthogonal to `normal`.
fn plane_basis<R: Real>(normal: &Vec3<R>) -> Vec<Vec3<R>> {
    let candidates = [
        Vec3::new(R::one(), R::zero(), R::zero()),
        Vec3::new(R::zero(), R::one(), R::zero()),
        Vec3::new(R::zero(), R::zero(), R::one()),
    ];
    let mut e1: Option<(Vec3<R>, R)> = None;
    for cand in &candidates {
        let proj = cand.sub(&normal.scale(cand.dot(normal)));
        let n = proj.norm();
        if let Some(unit) = proj.normalized() {
            if e1.as_ref().map_or(true, |(_, bn)| n > *bn) {
                e1 = Some((unit, n));
            }
        }
    }
    let (e1, _) = e1.expect("normal is a unit vector, some axis projects nontrivially");
    let e2 = normal.cross(&e1);
    vec![e1, e2]
}

//! Enumeration of guessed radius profiles.
//!
//! A profile is a non-increasing vector `(r̃_1, …, r̃_k)`. The head `r̃_1` is
//! drawn from a geometric grid anchored at a colorful k-center value `r`;
//! the remaining entries come from a grid under the head that starts at
//! `(eps / k) · r̃_1`, plus zero. Given an exact k-center value, the stream
//! contains a profile that dominates the optimal radii componentwise while
//! costing at most `(1 + eps) · Σ r* + eps · r*_1` in total.

use crate::error::{Error, Result};

/// Non-increasing vector of guessed radii.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusProfile {
    radii: Vec<f64>,
}

impl RadiusProfile {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.iter().any(|r| r.is_nan() || *r < 0.0) {
            return Err(Error::InvalidArgument("profile radii must be nonnegative".into()));
        }
        if radii.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("profile radii must be non-increasing".into()));
        }
        Ok(Self { radii })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn sum(&self) -> f64 {
        self.radii.iter().sum()
    }

    /// `r̃_i ≥ target_i` for every position; missing target entries count as 0.
    pub fn dominates(&self, target: &[f64]) -> bool {
        self.radii.iter().enumerate().all(|(i, &r)| r >= target.get(i).copied().unwrap_or(0.0))
    }
}

/// Candidates for the largest radius: `(1 + eps)^l · r / beta` for
/// `l = 1, 2, …` up to the first `l` with `(1 + eps)^l ≥ beta · k` (at least
/// one candidate). Every value in `[r / beta, k · r]` is within a factor
/// `1 + eps` below some candidate.
pub fn head_candidates(r: f64, beta: f64, k: usize, eps: f64) -> Result<Vec<f64>> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("k-center value must be positive, got {r}")));
    }
    if !(beta >= 1.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!("beta must be at least 1, got {beta}")));
    }
    check_grid_args(k, eps)?;
    let target = beta * k as f64;
    let base = r / beta;
    let mut out = Vec::new();
    let mut l = 1;
    loop {
        let growth = (1.0 + eps).powi(l);
        out.push(growth * base);
        if growth >= target {
            break;
        }
        l += 1;
    }
    Ok(out)
}

/// Candidates for the non-leading radii under a head guess `r1`:
/// `{0} ∪ {(eps / k) · r1 · (1 + eps)^j : j ≥ 0} ∩ (0, r1]`, with `r1`
/// itself always included. Sorted ascending.
pub fn tail_candidates(r1: f64, k: usize, eps: f64) -> Result<Vec<f64>> {
    if !(r1 > 0.0 && r1.is_finite()) {
        return Err(Error::InvalidArgument(format!("head radius must be positive, got {r1}")));
    }
    check_grid_args(k, eps)?;
    let floor = eps / k as f64 * r1;
    let mut out = vec![0.0];
    let mut j = 0;
    loop {
        let v = floor * (1.0 + eps).powi(j);
        if v >= r1 {
            break;
        }
        out.push(v);
        j += 1;
    }
    out.push(r1);
    Ok(out)
}

fn check_grid_args(k: usize, eps: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    Ok(())
}

/// The head grid together with the per-head tail grids.
#[derive(Debug, Clone)]
pub struct ProfileGrid {
    k: usize,
    heads: Vec<f64>,
    tails: Vec<Vec<f64>>,
}

impl ProfileGrid {
    /// Grid for a k-center value `kcenter_value` obtained with guarantee
    /// `beta`. A zero value collapses to the single all-zero profile.
    pub fn new(k: usize, kcenter_value: f64, beta: f64, eps: f64) -> Result<Self> {
        if !(kcenter_value >= 0.0 && kcenter_value.is_finite()) {
            return Err(Error::InvalidArgument(format!("k-center value must be nonnegative, got {kcenter_value}")));
        }
        check_grid_args(k, eps)?;
        if kcenter_value == 0.0 {
            return Ok(Self { k, heads: vec![0.0], tails: vec![vec![0.0]] });
        }
        let heads = head_candidates(kcenter_value, beta, k, eps)?;
        let tails = heads.iter().map(|&h| tail_candidates(h, k, eps)).collect::<Result<_>>()?;
        Ok(Self { k, heads, tails })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn heads(&self) -> &[f64] {
        &self.heads
    }

    /// Tail grid for the head at `head_index`, ascending.
    pub fn tails(&self, head_index: usize) -> &[f64] {
        &self.tails[head_index]
    }

    /// Number of profiles the stream yields.
    pub fn profile_count(&self) -> u128 {
        self.tails.iter().map(|t| multichoose(t.len() as u128, (self.k - 1) as u128)).sum()
    }

    /// Profiles in lexicographic order of `(head, r̃_2, …, r̃_k)`, lazily.
    pub fn profiles(&self) -> Profiles<'_> {
        Profiles { grid: self, head: 0, idx: vec![0; self.k - 1], done: self.heads.is_empty() }
    }
}

/// Lazily yields every profile of a [`ProfileGrid`].
pub fn enumerate_profiles(k: usize, kcenter_value: f64, beta: f64, eps: f64) -> Result<ProfileStream> {
    let grid = ProfileGrid::new(k, kcenter_value, beta, eps)?;
    Ok(ProfileStream { grid, head: 0, idx: vec![0; k - 1], done: false })
}

/// Owning version of [`Profiles`], returned by [`enumerate_profiles`].
pub struct ProfileStream {
    grid: ProfileGrid,
    head: usize,
    idx: Vec<usize>,
    done: bool,
}

impl ProfileStream {
    pub fn grid(&self) -> &ProfileGrid {
        &self.grid
    }
}

impl Iterator for ProfileStream {
    type Item = RadiusProfile;

    fn next(&mut self) -> Option<RadiusProfile> {
        advance(&self.grid, &mut self.head, &mut self.idx, &mut self.done)
    }
}

pub struct Profiles<'a> {
    grid: &'a ProfileGrid,
    head: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Profiles<'_> {
    type Item = RadiusProfile;

    fn next(&mut self) -> Option<RadiusProfile> {
        advance(self.grid, &mut self.head, &mut self.idx, &mut self.done)
    }
}

// `idx` holds tail-grid indices for positions 2..=k and is kept
// non-increasing, which makes the radii non-increasing.
fn advance(grid: &ProfileGrid, head: &mut usize, idx: &mut [usize], done: &mut bool) -> Option<RadiusProfile> {
    if *done {
        return None;
    }
    let tails = &grid.tails[*head];
    let mut radii = Vec::with_capacity(grid.k);
    radii.push(grid.heads[*head]);
    radii.extend(idx.iter().map(|&i| tails[i]));
    let out = RadiusProfile { radii };

    // Lexicographic successor among non-increasing index vectors.
    let top = tails.len() - 1;
    let mut pos = idx.len();
    loop {
        if pos == 0 {
            *head += 1;
            idx.iter_mut().for_each(|i| *i = 0);
            if *head == grid.heads.len() {
                *done = true;
            }
            break;
        }
        pos -= 1;
        let limit = if pos == 0 { top } else { idx[pos - 1] };
        if idx[pos] < limit {
            idx[pos] += 1;
            idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
            break;
        }
    }
    Some(out)
}

fn multichoose(n: u128, r: u128) -> u128 {
    // C(n + r - 1, r)
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n + i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_examples() {
        assert_eq!(head_candidates(1.0, 1.0, 2, 1.0).unwrap(), vec![2.0]);
        assert_eq!(head_candidates(1.0, 1.0, 4, 1.0).unwrap(), vec![2.0, 4.0]);
        let h = head_candidates(1.0, 3.0, 1, 1.0).unwrap();
        assert_eq!(h.len(), 2);
        assert!((h[0] - 2.0 / 3.0).abs() < 1e-15 && (h[1] - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn head_has_a_candidate_when_k_is_one() {
        assert_eq!(head_candidates(1.0, 1.0, 1, 1.0).unwrap(), vec![2.0]);
    }

    #[test]
    fn head_rejects_nonpositive_value() {
        assert!(head_candidates(0.0, 1.0, 2, 1.0).is_err());
        assert!(head_candidates(-1.0, 1.0, 2, 1.0).is_err());
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_candidates(2.0, 2, 1.0).unwrap(), vec![0.0, 1.0, 2.0]);
        assert_eq!(tail_candidates(1.0, 1, 1.0).unwrap(), vec![0.0, 1.0]);
        let t = tail_candidates(3.7, 3, 0.2).unwrap();
        assert_eq!(t[0], 0.0);
        assert_eq!(*t.last().unwrap(), 3.7);
    }

    #[test]
    fn line4_stream() {
        let stream = enumerate_profiles(2, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(stream.grid().profile_count(), 3);
        let all: Vec<Vec<f64>> = stream.map(|p| p.radii().to_vec()).collect();
        assert_eq!(all, vec![vec![2.0, 0.0], vec![2.0, 1.0], vec![2.0, 2.0]]);
    }

    #[test]
    fn k1_stream_is_heads() {
        let heads = head_candidates(1.0, 3.0, 1, 1.0).unwrap();
        let all: Vec<Vec<f64>> = enumerate_profiles(1, 1.0, 3.0, 1.0).unwrap().map(|p| p.radii().to_vec()).collect();
        assert_eq!(all, heads.into_iter().map(|h| vec![h]).collect::<Vec<_>>());
    }

    #[test]
    fn zero_value_gives_zero_profile() {
        let all: Vec<_> = enumerate_profiles(3, 0.0, 1.0, 0.5).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].radii(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn stream_is_lexicographic_and_counted() {
        let stream = enumerate_profiles(3, 1.3, 1.0, 0.4).unwrap();
        let expected = stream.grid().profile_count();
        let all: Vec<_> = stream.collect();
        assert_eq!(all.len() as u128, expected);
        for w in all.windows(2) {
            let a = w[0].radii();
            let b = w[1].radii();
            let ord = a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne());
            assert_eq!(ord, Some(std::cmp::Ordering::Less));
        }
    }

    #[test]
    fn profile_new_validates() {
        assert!(RadiusProfile::new(vec![2.0, 1.0, 1.0]).is_ok());
        assert!(RadiusProfile::new(vec![1.0, 2.0]).is_err());
        assert!(RadiusProfile::new(vec![1.0, -1.0]).is_err());
    }
}

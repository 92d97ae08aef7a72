use rand::Rng;

use crate::models::Restriction;

use super::SwitchingError;

/// A restriction built from disjoint pairs, each pair holding one 0 and one 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingRestriction {
    /// `(zero, one)`: the first position is set to 0, the second to 1.
    pub pairs: Vec<(usize, usize)>,
    pub restriction: Restriction,
}

/// Fixes `count` disjoint random pairs among the stars of `rho`, each with a
/// fair random orientation.
fn pair_up<R: Rng + ?Sized>(rho: &Restriction, count: usize, rng: &mut R) -> PairingRestriction {
    let mut stars = rho.stars();
    assert!(2 * count <= stars.len());
    let mut out = rho.clone();
    let mut pairs = Vec::with_capacity(count);
    for p in 0..count {
        for slot in 2 * p..2 * p + 2 {
            let j = rng.gen_range(slot..stars.len());
            stars.swap(slot, j);
        }
        let (a, b) = (stars[2 * p], stars[2 * p + 1]);
        let pair = if rng.gen::<bool>() { (a, b) } else { (b, a) };
        out.set(pair.0, Some(false));
        out.set(pair.1, Some(true));
        pairs.push(pair);
    }
    PairingRestriction {
        pairs,
        restriction: out,
    }
}

/// First-stage sampler on `m = 2n + 1` positions: `floor(n/2)` uniformly
/// chosen disjoint pairs, everything else starred.
pub fn sample_balanced_restriction<R: Rng + ?Sized>(
    m: usize,
    rng: &mut R,
) -> Result<PairingRestriction, SwitchingError> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(SwitchingError::Host { m });
    }
    let n = (m - 1) / 2;
    Ok(pair_up(&Restriction::all_star(m), n / 2, rng))
}

/// Pairs up starred positions of `rho` until exactly `target_stars` remain.
pub fn extend_restriction_stars<R: Rng + ?Sized>(
    rho: &Restriction,
    target_stars: usize,
    rng: &mut R,
) -> Result<Restriction, SwitchingError> {
    let stars = rho.star_count();
    if target_stars > stars {
        return Err(SwitchingError::TargetExceeds {
            stars,
            target: target_stars,
        });
    }
    if (stars - target_stars) % 2 == 1 {
        return Err(SwitchingError::Parity {
            stars,
            target: target_stars,
        });
    }
    Ok(pair_up(rho, (stars - target_stars) / 2, rng).restriction)
}

/// Second-stage default: keeps `target` stars, or one more when the parity
/// of the difference is odd. Returns the restriction and the star count used.
pub fn extend_to_default<R: Rng + ?Sized>(
    rho: &Restriction,
    target: usize,
    rng: &mut R,
) -> Result<(Restriction, usize), SwitchingError> {
    let stars = rho.star_count();
    let mut target = target.min(stars);
    if (stars - target) % 2 == 1 {
        target += 1;
    }
    Ok((extend_restriction_stars(rho, target, rng)?, target))
}

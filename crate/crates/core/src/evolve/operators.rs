use super::config::CrossoverKind;
use crate::encoding::EncodingSpec;
use crate::error::{FsmError, Result};
use crate::genome::Genome;
use crate::rng::RandomSource;

/// Redraws one field of one uniformly chosen gene: the output (with
/// probability 1/2, drawn from `[0, A)`) or the next state (from `[0, S)`).
///
/// Draw order: gene index, branch bit (1 = output), new value.
pub fn mutate(genome: &Genome, spec: &EncodingSpec, rng: &mut dyn RandomSource) -> Genome {
    let mut child = genome.clone();
    let gene = rng.below(spec.gene_count as u64) as usize;
    if rng.bit() {
        child.set_output_field(gene, rng.below(u64::from(spec.action_count)) as u32);
    } else {
        child.set_next_field(gene, rng.below(u64::from(spec.states)) as u32);
    }
    child
}

fn same_shape(a: &Genome, b: &Genome) -> Result<()> {
    if a.len() != b.len() || a.spec() != b.spec() {
        return Err(FsmError::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(())
}

fn splice(a: &Genome, b: &Genome, from_b: impl Fn(usize) -> bool) -> (Genome, Genome) {
    let (x, y): (Vec<bool>, Vec<bool>) = a
        .bits()
        .iter()
        .zip(b.bits())
        .enumerate()
        .map(|(t, (&p, &q))| if from_b(t) { (q, p) } else { (p, q) })
        .unzip();
    let spec = *a.spec();
    (
        Genome::from_bits(x, spec).expect("same length"),
        Genome::from_bits(y, spec).expect("same length"),
    )
}

/// One-point exchange at bit `k`, before correction:
/// `child1 = a[..k] ++ b[k..]`, `child2 = b[..k] ++ a[k..]`.
pub fn one_point_at(a: &Genome, b: &Genome, k: usize) -> Result<(Genome, Genome)> {
    same_shape(a, b)?;
    Ok(splice(a, b, |t| t >= k))
}

/// Two-point exchange of the segment `[i, j)`, before correction.
pub fn two_point_at(a: &Genome, b: &Genome, i: usize, j: usize) -> Result<(Genome, Genome)> {
    same_shape(a, b)?;
    Ok(splice(a, b, |t| t >= i && t < j))
}

/// Bit-level crossover with cut points uniform in `[1, L-1]`; children are
/// corrected before they are returned.
pub fn crossover(
    a: &Genome,
    b: &Genome,
    kind: CrossoverKind,
    rng: &mut dyn RandomSource,
) -> Result<(Genome, Genome)> {
    same_shape(a, b)?;
    let len = a.len();
    if len < 2 {
        return Ok((a.clone(), b.clone()));
    }
    let cut = |rng: &mut dyn RandomSource, n: usize| 1 + rng.below(n as u64) as usize;
    let (mut c1, mut c2) = match kind {
        CrossoverKind::TwoPoint if len >= 3 => {
            let i = cut(rng, len - 1);
            let mut j = cut(rng, len - 2);
            if j >= i {
                j += 1;
            }
            two_point_at(a, b, i.min(j), i.max(j))?
        }
        _ => one_point_at(a, b, cut(rng, len - 1))?,
    };
    c1.correct_in_place();
    c2.correct_in_place();
    Ok((c1, c2))
}

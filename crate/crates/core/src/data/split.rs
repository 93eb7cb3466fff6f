use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Dataset;
use crate::error::{Error, Result};

fn check_fraction(train_fraction: f64) -> Result<()> {
    if train_fraction > 0.0 && train_fraction < 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("train fraction {train_fraction} must lie in (0, 1)")))
    }
}

/// Per-class seeded shuffle; each class puts `round(f · n_c)` rows (at least one,
/// at most `n_c - 1`) in the training side. Both sides keep original row order.
pub fn stratified_split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    check_fraction(train_fraction)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in [-1i8, 1] {
        let mut idx: Vec<usize> = (0..ds.len()).filter(|&i| ds.labels[i] == class).collect();
        if idx.len() < 2 {
            return Err(Error::Data(format!(
                "class {class} has {} sample(s); a stratified split needs at least 2",
                idx.len()
            )));
        }
        idx.shuffle(&mut rng);
        let k = ((train_fraction * idx.len() as f64).round() as usize).clamp(1, idx.len() - 1);
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((ds.subset(&train), ds.subset(&test)))
}

/// Seeded shuffle without stratification.
pub fn random_split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    check_fraction(train_fraction)?;
    if ds.len() < 2 {
        return Err(Error::Data("need at least two rows to split".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..ds.len()).collect();
    idx.shuffle(&mut rng);
    let k = ((train_fraction * ds.len() as f64).round() as usize).clamp(1, ds.len() - 1);
    let (mut a, mut b) = (idx[..k].to_vec(), idx[k..].to_vec());
    a.sort_unstable();
    b.sort_unstable();
    Ok((ds.subset(&a), ds.subset(&b)))
}

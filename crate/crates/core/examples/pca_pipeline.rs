//! Load the bundled CSV, standardize, and project onto principal components.

use std::path::Path;

use quernel::data::load_csv;
use quernel::ml::{pca_fit, standardize_fit_transform};

fn main() -> quernel::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample.csv");
    let (ds, load) = load_csv(&path, "status")?;
    println!(
        "{} rows, {} features, {} dropped; classes -1 = {:?}, +1 = {:?}",
        ds.len(),
        ds.num_features(),
        load.rows_dropped,
        ds.class_names[0],
        ds.class_names[1]
    );

    let (z, _) = standardize_fit_transform(&ds.features)?;
    let pca = pca_fit(&z, 7)?;
    let total: f64 = pca_fit(&z, ds.num_features())?.explained_variance.iter().sum();
    for (k, v) in pca.explained_variance.iter().enumerate() {
        println!("PC{}: variance {:.3} ({:.1}%)", k + 1, v, 100.0 * v / total);
    }
    let projected = pca.transform(&z)?;
    println!("first row projected: {:.3?}", projected[0]);
    Ok(())
}

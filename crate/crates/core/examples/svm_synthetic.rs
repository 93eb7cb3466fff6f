//! Train quantum and classical kernel SVMs on a synthetic two-class problem.

use quernel::data::{stratified_split, synthesize_gaussian, SyntheticSpec};
use quernel::kernel::{cross_kernel, kernel_matrix, KernelConfig};
use quernel::maps::{CpMapParams, MapSpec};
use quernel::ml::{compute_metrics, confusion, svm_predict, svm_train, AngleScaler, ClassicalKernel, SvmParams};

fn main() -> quernel::Result<()> {
    let ds = synthesize_gaussian(&SyntheticSpec {
        num_samples: 100,
        num_features: 7,
        separation: 6.0,
        seed: 1,
    })?;
    let (train, test) = stratified_split(&ds, 0.8, 0)?;
    let scaler = AngleScaler::fit(&train.features)?;
    let xtr = scaler.transform(&train.features)?;
    let xte = scaler.transform(&test.features)?;

    let map = MapSpec::Cp(CpMapParams::default());
    let cfg = KernelConfig::exact();
    let gram = kernel_matrix(&xtr, &map, &cfg)?;
    let cross = cross_kernel(&xtr, &xte, &map, &cfg)?;
    report("cp", gram.matrix(), &cross, &train.labels, &test.labels)?;

    let rbf = ClassicalKernel::Rbf { gamma: None };
    report("rbf", &rbf.gram(&xtr)?, &rbf.cross(&xtr, &xte)?, &train.labels, &test.labels)
}

fn report(
    name: &str,
    gram: &nalgebra::DMatrix<f64>,
    cross: &nalgebra::DMatrix<f64>,
    ytr: &[i8],
    yte: &[i8],
) -> quernel::Result<()> {
    let model = svm_train(gram, ytr, &SvmParams::default())?;
    let pred = svm_predict(&model, cross)?;
    let m = compute_metrics(&confusion(yte, &pred)?);
    println!(
        "{name:<4} support vectors {:>3}  mcc {:.3}  accuracy {:.3}  f1 {:.3}",
        model.support_indices.len(),
        m.mcc,
        m.accuracy,
        m.f1
    );
    Ok(())
}

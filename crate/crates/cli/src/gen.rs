use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::Result;
use clap::Args;
use sparsedtw_core::io::write_plain;
use sparsedtw_core::{generate_pair, pearson, SyntheticSpec};

use crate::exit;

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Samples per series, at least 2.
    #[arg(long)]
    pub len: usize,
    /// Target correlation in [-1, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output prefix; writes `<out>.a.txt` and `<out>.b.txt`.
    #[arg(long)]
    pub out: PathBuf,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

pub fn run(args: GenArgs) -> Result<u8> {
    let spec = SyntheticSpec::new(args.len, args.rho, args.seed);
    let (a, b) = generate_pair(&spec)?;
    let (pa, pb) = (
        with_suffix(&args.out, ".a.txt"),
        with_suffix(&args.out, ".b.txt"),
    );
    write_plain(&pa, &a)?;
    write_plain(&pb, &b)?;
    let r = pearson(&a, &b)?;
    exit::emit(&format!(
        "wrote {} and {}\ncorrelation {r:.6}",
        pa.display(),
        pb.display()
    ))?;
    Ok(exit::OK)
}

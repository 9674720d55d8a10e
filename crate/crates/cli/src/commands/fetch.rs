use std::io::Write;

use anyhow::Context;
use clap::Args;

use crate::{usage, DataArgs, Failure, Status};

#[derive(Debug, Args)]
pub struct FetchArgs {
    /// Registered dataset names
    #[arg(required = true)]
    pub names: Vec<String>,
    #[command(flatten)]
    pub data: DataArgs,
    /// Download even when the file already exists
    #[arg(long)]
    pub force: bool,
}

pub fn run(a: &FetchArgs) -> Result<Status, Failure> {
    let registry = a.data.registry()?;
    for name in &a.names {
        let entry = registry
            .get(name)
            .ok_or_else(|| usage(format!("no dataset named {name:?}")))?;
        let path = registry.path_of(entry);
        if path.is_file() && !a.force {
            eprintln!("{name}: {} already present", path.display());
            continue;
        }
        let url = entry.url.as_deref().ok_or_else(|| {
            usage(format!(
                "{name} has no download URL; add one with a registry manifest or place the file at {}",
                path.display()
            ))
        })?;
        let body = ureq::get(url)
            .call()
            .and_then(|mut resp| resp.body_mut().read_to_vec())
            .with_context(|| format!("downloading {url}"))?;
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let mut f =
            std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        f.write_all(&body)?;
        eprintln!("{name}: {} bytes written to {}", body.len(), path.display());
    }
    Ok(Status::Complete)
}

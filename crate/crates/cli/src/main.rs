//! `csgdeck`: validate, export, measure and view CSG models.
//!
//! Exit status: 0 on success, 1 when the model has validation errors, 2 for
//! I/O and parse failures.

mod load;
mod serve;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use csgdeck_core::cells::mc_cell_volume;
use csgdeck_core::doc::write_model_doc;
use csgdeck_core::materials::{MaterialDb, RatioMode};
use csgdeck_core::snake::{example_snake, SnakeParams};
use csgdeck_core::{build_scene, export_input, write_scene, Aabb, ExportFlags, SceneOptions, Vec3};

#[derive(Parser)]
#[command(
    name = "csgdeck",
    version,
    about = "CSG models for PHITS: validate, export, measure, view"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model document or PHITS deck and print its diagnostics.
    Validate { model: PathBuf },
    /// Write PHITS input sections.
    Export {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Comma-separated subset of material,surface,cell.
        #[arg(long, default_value = "material,surface,cell")]
        sections: String,
        /// Extra comment lines for the header block.
        #[arg(long)]
        header: Option<String>,
    },
    /// Monte Carlo volume of one cell.
    Volume {
        model: PathBuf,
        #[arg(long)]
        cell: u32,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampling box as xmin,xmax,ymin,ymax,zmin,zmax.
        #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true)]
        sampling_box: Option<Vec<f64>>,
    },
    /// Write the scene document consumed by the viewer.
    Scene {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        scene: SceneArgs,
    },
    /// Serve the scene and viewer over HTTP on 127.0.0.1.
    View {
        model: PathBuf,
        /// 0 picks a free port.
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Open the page in the default browser.
        #[arg(long)]
        open: bool,
        /// Directory with a viewer build served at `/`.
        #[arg(long)]
        assets: Option<PathBuf>,
        #[command(flatten)]
        scene: SceneArgs,
    },
    /// Browse the material database.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
    /// Generate an example model document.
    Example {
        #[command(subcommand)]
        which: Example,
    },
}

#[derive(clap::Args)]
struct SceneArgs {
    #[arg(long, default_value_t = 32)]
    resolution: u32,
    #[arg(long)]
    labels: bool,
    /// Opacity applied to every object.
    #[arg(long)]
    opacity: Option<f64>,
}

impl SceneArgs {
    fn options(&self) -> SceneOptions {
        SceneOptions {
            resolution: self.resolution,
            labels: self.labels,
            opacity_override: self.opacity,
        }
    }
}

#[derive(Subcommand)]
enum MaterialsAction {
    List,
    Show { name: String },
}

#[derive(Subcommand)]
enum Example {
    /// The 50-segment snake with a hat.
    Snake {
        /// Defaults to standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

const VALIDATION_FAILED: u8 = 1;
const FAILURE: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILURE)
        }
    }
}

fn database() -> Result<MaterialDb> {
    let db = MaterialDb::from_env().context("loading the material database")?;
    for w in db.warnings() {
        log::warn!("{w}");
    }
    Ok(db)
}

/// Loads a model, prints its messages to stderr and returns it unless it
/// has errors.
fn load_valid(path: &Path, db: &MaterialDb) -> Result<Result<csgdeck_core::Model, ExitCode>> {
    let l = load::load(path, db)?;
    for m in &l.messages {
        eprintln!("{m}");
    }
    Ok(if l.errors {
        Err(ExitCode::from(VALIDATION_FAILED))
    } else {
        Ok(l.model)
    })
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Validate { model } => {
            let db = database()?;
            let l = load::load(&model, &db)?;
            for m in &l.messages {
                println!("{m}");
            }
            if l.errors {
                return Ok(ExitCode::from(VALIDATION_FAILED));
            }
            let m = &l.model;
            println!(
                "ok: {} surfaces, {} materials, {} cells",
                m.surfaces.len(),
                m.materials.len(),
                m.cells.len()
            );
        }
        Command::Export {
            model,
            output,
            sections,
            header,
        } => {
            let db = database()?;
            let m = match load_valid(&model, &db)? {
                Ok(m) => m,
                Err(code) => return Ok(code),
            };
            let flags = ExportFlags {
                header_comment: header,
                ..ExportFlags::from_sections(&sections)?
            };
            write_output(&output, export_input(&m, &flags)?.as_bytes())?;
        }
        Command::Volume {
            model,
            cell,
            samples,
            seed,
            sampling_box,
        } => {
            let db = database()?;
            let m = match load_valid(&model, &db)? {
                Ok(m) => m,
                Err(code) => return Ok(code),
            };
            let bbox = sampling_box.map(|b| parse_box(&b)).transpose()?;
            let v = mc_cell_volume(&m, cell, samples, seed, bbox)?;
            let out = serde_json::json!({
                "cell": cell,
                "estimate": v.estimate,
                "std_error": v.std_error,
                "hits": v.hits,
                "samples": v.samples,
                "seed": v.seed,
                "box": [v.sampling_box.min.to_array(), v.sampling_box.max.to_array()],
            });
            println!("{out}");
        }
        Command::Scene {
            model,
            output,
            scene,
        } => {
            let db = database()?;
            let m = match load_valid(&model, &db)? {
                Ok(m) => m,
                Err(code) => return Ok(code),
            };
            write_output(&output, &write_scene(&build_scene(&m, &scene.options())?))?;
        }
        Command::View {
            model,
            port,
            open,
            assets,
            scene,
        } => {
            let db = database()?;
            let m = match load_valid(&model, &db)? {
                Ok(m) => m,
                Err(code) => return Ok(code),
            };
            if let Some(dir) = &assets {
                if !dir.join("index.html").is_file() {
                    bail!("{} has no index.html", dir.display());
                }
            }
            let doc = write_scene(&build_scene(&m, &scene.options())?);
            serve::serve(doc, assets, port, open)?;
        }
        Command::Materials { action } => {
            let db = database()?;
            let stdout = &mut std::io::stdout().lock();
            match action {
                MaterialsAction::List => {
                    for e in db.entries() {
                        writeln!(stdout, "{:<40} {:>10} g/cc", e.name, e.density)?;
                    }
                }
                MaterialsAction::Show { name } => {
                    let Some(e) = db.get(&name) else {
                        // the lookup error carries the close matches
                        let e = db.material(&name, 1).expect_err("lookup failed above");
                        bail!("{e}");
                    };
                    let mode = match e.ratio_mode {
                        RatioMode::Atom => "atom",
                        RatioMode::Mass => "mass",
                    };
                    writeln!(stdout, "name     {}", e.name)?;
                    writeln!(stdout, "density  {} g/cc", e.density)?;
                    writeln!(stdout, "ratios   {mode}")?;
                    writeln!(stdout, "gas      {}", e.gas)?;
                    writeln!(stdout, "color    {}", e.color)?;
                    writeln!(stdout, "source   {}", e.provenance)?;
                    for (s, r) in &e.composition {
                        writeln!(stdout, "  {:<8} {r}", s.to_string())?;
                    }
                }
            }
        }
        Command::Example {
            which: Example::Snake { output },
        } => {
            let db = database()?;
            let text = write_model_doc(&example_snake(&SnakeParams::default(), &db)?);
            match output {
                Some(path) => write_output(&path, text.as_bytes())?,
                None => std::io::stdout().lock().write_all(text.as_bytes())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_box(b: &[f64]) -> Result<Aabb> {
    let [x0, x1, y0, y1, z0, z1] = b else {
        bail!("--box takes six numbers");
    };
    if !b.iter().all(|v| v.is_finite()) || x0 >= x1 || y0 >= y1 || z0 >= z1 {
        bail!("--box needs finite bounds with min < max on every axis");
    }
    Ok(Aabb::new(
        Vec3::new(*x0, *y0, *z0),
        Vec3::new(*x1, *y1, *z1),
    ))
}

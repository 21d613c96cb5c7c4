// Copyright 2026 The spinlat developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line driver: compile circuits, prepare states, run correlation
//! and spectrum protocols, and validate the operator algebras.
//!
//! Exit codes: 0 success, 2 parse error, 3 invalid model semantics,
//! 4 validation failure, 5 resource limit exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use spinlat::mappings::{
    validate_anyon_algebra, validate_fermion_algebra, validate_modified_commutators,
    ValidationReport,
};
use spinlat::measurement::{
    correlation_csv, measure_correlation, spectral_peaks, spectrum_csv,
    spectrum_time_series, CorrelationSpec, SpectrumSpec,
};
use spinlat::model::{ModelFile, Preparation, StatisticsModel};
use spinlat::pauli::PauliString;
use spinlat::synthesis::trotter_circuit;
use spinlat::Error;

/// Environment variable overriding the default dense-oracle qubit limit.
const ORACLE_LIMIT_ENV: &str = "SPINLAT_ORACLE_LIMIT";

const EXIT_PARSE: u8 = 2;
const EXIT_MODEL: u8 = 3;
const EXIT_VALIDATION: u8 = 4;
const EXIT_RESOURCE: u8 = 5;

const VALIDATION_TOLERANCE: f64 = 1e-12;
const DEFAULT_TROTTER_STEPS: usize = 64;

#[derive(Parser)]
#[command(
    name = "spinlat",
    about = "Compile and simulate lattice models on spin-1/2 registers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile the Trotterized evolution circuit and report the gate census.
    Compile {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trotter step count (overrides the model file).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Build the initial-state preparation circuit.
    Prep {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the dynamical correlation function G(t) over the time grid.
    Correlate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// "exact" or "trotter" (overrides the model file).
        #[arg(long)]
        backend: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        oracle_limit: Option<usize>,
    },
    /// Extract the observable spectrum from the ancilla time series.
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        backend: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        oracle_limit: Option<usize>,
    },
    /// Run the dense-matrix algebra validation suites.
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::OracleLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_MODEL,
    }
}

fn load_model(path: &Path) -> Result<ModelFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    ModelFile::parse(&text)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn env_oracle_limit() -> Option<usize> {
    std::env::var(ORACLE_LIMIT_ENV).ok()?.parse().ok()
}

fn effective_oracle_limit(model: &ModelFile, cli: Option<usize>) -> usize {
    model.oracle_limit(cli.or_else(env_oracle_limit))
}

fn census_report(circuit: &spinlat::synthesis::Circuit) -> String {
    let c = circuit.census();
    format!(
        "# census rx={} ry={} rz={} zz={} cpexp={} cphase={} total={}\n",
        c.rx,
        c.ry,
        c.rz,
        c.zz,
        c.cpexp,
        c.cphase,
        c.total()
    )
}

fn cmd_compile(
    model_path: &Path,
    out: &Option<PathBuf>,
    steps: Option<usize>,
) -> Result<(), Error> {
    let model = load_model(model_path)?;
    let h = model.pauli_hamiltonian()?;
    let t = model.run.total_time.unwrap_or(1.0);
    let steps = steps
        .or(model.run.trotter_steps)
        .unwrap_or(DEFAULT_TROTTER_STEPS);
    let circuit = if h.is_zero() {
        spinlat::synthesis::Circuit::new(model.num_qubits())
    } else {
        trotter_circuit(&h, t, steps)?
    };
    let mut text = circuit.to_text();
    text.push_str(&census_report(&circuit));
    emit(out, &text)
}

fn cmd_prep(model_path: &Path, out: &Option<PathBuf>) -> Result<(), Error> {
    let model = load_model(model_path)?;
    let prep = model.preparation()?;
    let mut text = prep.circuit().to_text();
    if let Preparation::PostSelected(p) = &prep {
        text.push_str(&format!(
            "# ancillas {:?}\n# accept pattern {:?}\n# predicted success probability {:.16e}\n",
            p.ancilla_indices,
            p.accept_pattern.values().copied().collect::<Vec<_>>(),
            p.predicted_success_probability
        ));
    }
    text.push_str(&census_report(prep.circuit()));
    emit(out, &text)
}

fn correlation_spec(
    model: &ModelFile,
    backend: Option<String>,
    steps: Option<usize>,
    oracle_limit: Option<usize>,
) -> Result<CorrelationSpec, Error> {
    let mut patched = model.clone();
    if let Some(b) = backend {
        patched.run.backend = Some(b);
    }
    let n = model.num_qubits();
    let ident = || Ok::<PauliString, Error>(PauliString::identity(n));
    let a = match &model.run.a {
        Some(text) => model.correlation_operator(text)?,
        None => ident()?,
    };
    let b = match &model.run.b {
        Some(text) => model.correlation_operator(text)?,
        None => ident()?,
    };
    Ok(CorrelationSpec {
        a,
        b,
        hamiltonian: model.pauli_hamiltonian()?,
        prep: model.preparation()?.circuit().clone(),
        times: if model.run.times.is_empty() {
            vec![0.0]
        } else {
            model.run.times.clone()
        },
        backend: patched.backend()?,
        trotter_steps_per_unit: steps
            .or(model.run.trotter_steps)
            .unwrap_or(DEFAULT_TROTTER_STEPS),
        oracle_limit: effective_oracle_limit(model, oracle_limit),
    })
}

fn cmd_correlate(
    model_path: &Path,
    out: &Option<PathBuf>,
    backend: Option<String>,
    steps: Option<usize>,
    oracle_limit: Option<usize>,
) -> Result<(), Error> {
    let model = load_model(model_path)?;
    let spec = correlation_spec(&model, backend, steps, oracle_limit)?;
    let rows = measure_correlation(&spec)?;
    emit(out, &correlation_csv(&rows))
}

fn cmd_spectrum(
    model_path: &Path,
    out: &Option<PathBuf>,
    backend: Option<String>,
    steps: Option<usize>,
    oracle_limit: Option<usize>,
) -> Result<(), Error> {
    let model = load_model(model_path)?;
    let mut patched = model.clone();
    if let Some(b) = backend {
        patched.run.backend = Some(b);
    }
    let dt = model
        .run
        .dt
        .ok_or_else(|| Error::InvalidModel("spectrum needs run.dt".into()))?;
    let num_samples = model
        .run
        .num_samples
        .ok_or_else(|| Error::InvalidModel("spectrum needs run.num_samples".into()))?;
    let spec = SpectrumSpec {
        q: model.pauli_hamiltonian()?,
        prep: model.preparation()?.circuit().clone(),
        dt,
        num_samples,
        backend: patched.backend()?,
        trotter_steps_per_unit: steps
            .or(model.run.trotter_steps)
            .unwrap_or(DEFAULT_TROTTER_STEPS),
        oracle_limit: effective_oracle_limit(&model, oracle_limit),
    };
    let series = spectrum_time_series(&spec)?;
    let peaks = spectral_peaks(&series, dt)?;
    emit(out, &spectrum_csv(&peaks))
}

fn print_report(title: &str, report: &ValidationReport) -> bool {
    for check in &report.checks {
        let status = if check.passed() { "pass" } else { "FAIL" };
        println!(
            "{status} [{title}] {} (violation {:.3e}, tolerance {:.1e})",
            check.name, check.violation, check.tolerance
        );
    }
    report.passed()
}

fn cmd_validate(model_path: &Path) -> Result<bool, Error> {
    let model = load_model(model_path)?;
    // Dense suites run at oracle scale regardless of the model's size.
    let modes = model.num_modes.clamp(2, 5);
    let ok = match model.statistics {
        StatisticsModel::Fermion => print_report(
            "fermion",
            &validate_fermion_algebra(modes, VALIDATION_TOLERANCE)?,
        ),
        StatisticsModel::Anyon { theta } => print_report(
            "anyon",
            &validate_anyon_algebra(modes.min(4), theta, VALIDATION_TOLERANCE)?,
        ),
        StatisticsModel::Boson { n_max } => print_report(
            "boson",
            &validate_modified_commutators(n_max.min(4), VALIDATION_TOLERANCE)?,
        ),
    };
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<u8, Error> = match cli.command {
        Command::Compile { model, out, steps } => {
            cmd_compile(&model, &out, steps).map(|_| 0)
        }
        Command::Prep { model, out } => cmd_prep(&model, &out).map(|_| 0),
        Command::Correlate { model, out, backend, steps, oracle_limit, seed: _ } => {
            cmd_correlate(&model, &out, backend, steps, oracle_limit).map(|_| 0)
        }
        Command::Spectrum { model, out, backend, steps, oracle_limit, seed: _ } => {
            cmd_spectrum(&model, &out, backend, steps, oracle_limit).map(|_| 0)
        }
        Command::Validate { model } => cmd_validate(&model).map(|ok| {
            if ok {
                0
            } else {
                EXIT_VALIDATION
            }
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

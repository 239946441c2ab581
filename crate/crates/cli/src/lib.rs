//! Command-line front end: file format, commands and reports.

pub mod commands;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{AnalyzeArgs, ConstructArgs, InputError, ModuleChoice, RecipeChoice};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "modext", version, about = "Exact computations on module extensions T(A,U)")]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for the randomized simplicity test.
    #[arg(long, global = true, env = "MODEXT_SEED")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModuleArg {
    #[value(name = "self")]
    SelfModule,
    File,
    Extension,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RecipeArg {
    Lift,
    Transport,
    Quotient,
    Corner,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra and bimodule axioms of a file.
    Validate {
        /// Input file.
        path: PathBuf,
    },
    /// Derivation space, inner derivations and H1.
    Der {
        path: PathBuf,
        /// Target module: A itself, the file's bimodule U, or T(A,U) itself.
        #[arg(long, value_enum, default_value = "self")]
        module: ModuleArg,
        /// Also print a basis of the inner derivations.
        #[arg(long)]
        inner: bool,
        /// Also print representatives of H1.
        #[arg(long)]
        h1: bool,
    },
    /// Split a map on T(A,U) into its four blocks and test the block conditions.
    Decompose {
        path: PathBuf,
        /// Name of a map with source and target T.
        #[arg(long)]
        map: String,
    },
    /// Build a derivation on an extension from a derivation of A or into U.
    Construct {
        #[arg(value_enum)]
        recipe: RecipeArg,
        path: PathBuf,
        #[arg(long, default_value = "delta")]
        delta: String,
        #[arg(long, default_value = "phi")]
        phi: String,
        #[arg(long, default_value = "psi")]
        psi: String,
        /// Subspace name, for the quotient recipe.
        #[arg(long, default_value = "I")]
        ideal: String,
        /// Element name, for the corner recipe.
        #[arg(long, default_value = "p")]
        idempotent: String,
        /// Write the resulting file here instead of printing it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Structural invariants; with no flags, everything applicable.
    Analyze {
        path: PathBuf,
        /// Jacobson radical and semisimplicity.
        #[arg(long)]
        radical: bool,
        #[arg(long)]
        center: bool,
        /// Two-sided unit, if any.
        #[arg(long)]
        unit: bool,
        /// Simplicity and primeness.
        #[arg(long)]
        simple: bool,
        /// ann_A U, needs a bimodule.
        #[arg(long)]
        annihilator: bool,
        /// Test the named element for p² = p.
        #[arg(long, value_name = "NAME")]
        idempotent: Option<String>,
        /// Exact ℓ¹ submultiplicativity constant.
        #[arg(long)]
        submult: bool,
        /// Search for a surjective left module map A → U.
        #[arg(long)]
        surjective: bool,
    },
}

pub fn run(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Validate { path } => commands::validate(path),
        Command::Der {
            path,
            module,
            inner,
            h1,
        } => {
            let module = match module {
                ModuleArg::SelfModule => ModuleChoice::SelfModule,
                ModuleArg::File => ModuleChoice::File,
                ModuleArg::Extension => ModuleChoice::Extension,
            };
            commands::der(path, module, *inner, *h1)
        }
        Command::Decompose { path, map } => commands::decompose(path, map),
        Command::Construct {
            recipe,
            path,
            delta,
            phi,
            psi,
            ideal,
            idempotent,
            output,
        } => commands::construct(&ConstructArgs {
            recipe: match recipe {
                RecipeArg::Lift => RecipeChoice::Lift,
                RecipeArg::Transport => RecipeChoice::Transport,
                RecipeArg::Quotient => RecipeChoice::Quotient,
                RecipeArg::Corner => RecipeChoice::Corner,
            },
            path: path.clone(),
            delta: delta.clone(),
            phi: phi.clone(),
            psi: psi.clone(),
            ideal: ideal.clone(),
            idempotent: idempotent.clone(),
            output: output.clone(),
        }),
        Command::Analyze {
            path,
            radical,
            center,
            unit,
            simple,
            annihilator,
            idempotent,
            submult,
            surjective,
        } => commands::analyze(
            path,
            &AnalyzeArgs {
                radical: *radical,
                center: *center,
                unit: *unit,
                simple: *simple,
                annihilator: *annihilator,
                idempotent: idempotent.clone(),
                submult: *submult,
                surjective: *surjective,
                seed: cli.seed,
            },
        ),
    }
}

/// Runs the command and returns `(stdout, stderr, exit status)`.
pub fn execute(cli: &Cli) -> (String, String, i32) {
    match run(cli) {
        Ok(report) => {
            let out = if cli.json {
                report.render_json()
            } else {
                report.render_text()
            };
            (out, String::new(), report.exit_code())
        }
        Err(e) => (String::new(), format!("error: {e}\n"), 2),
    }
}

mod args;
mod numeric;

use std::fmt::Display;
use std::io::{IsTerminal, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format, HopfChoice, KindArg};
use lbhopf_core::bell::{self, BellWord};
use lbhopf_core::grafting::{gl_product, left_graft};
use lbhopf_core::hn::HnHopf;
use lbhopf_core::lbseries::{self, Kind, LBSeries, Substitution};
use lbhopf_core::lincomb::Basis;
use lbhopf_core::word::Letter;
use lbhopf_core::wordhopf::{self, ConcatHopf, GradedHopf, ShuffleHopf};
use lbhopf_core::{Alphabet, ColorSet, GradedSeries, LetterAlphabet, LinComb, Tensor, Word};

/// Why a command failed; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

pub type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            report(&m);
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            report(&m);
            ExitCode::from(1)
        }
    }
}

fn report(message: &str) {
    let colored = std::env::var("LBHOPF_COLOR").map(|v| v != "never").unwrap_or(true) && std::io::stderr().is_terminal();
    if colored {
        eprintln!("\x1b[1;31merror:\x1b[0m {message}");
    } else {
        eprintln!("error: {message}");
    }
}

fn colors(cli: &Cli) -> Result<ColorSet, Failure> {
    Ok(ColorSet::new(cli.global.colors.split(',').map(str::trim))?)
}

fn letter_alphabet(letters_arg: &str) -> Result<LetterAlphabet, Failure> {
    if letters_arg.contains(':') || letters_arg.contains(',') {
        let mut letters = Vec::new();
        for item in letters_arg.split(',') {
            let (name, deg) = item.split_once(':').unwrap_or((item, "1"));
            let deg: usize = deg.trim().parse().map_err(|_| Failure::Usage(format!("bad letter degree in `{item}`")))?;
            letters.push((name.trim().to_owned(), deg));
        }
        Ok(LetterAlphabet::new(letters)?)
    } else {
        Ok(LetterAlphabet::from_chars(letters_arg)?)
    }
}

fn read_input(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn render_lincomb<B: Basis + Display>(p: &LinComb<B>, format: Format) -> String {
    match format {
        Format::Json => pretty(&Value::Array(p.iter().map(|(b, c)| json!([b.to_string(), c.to_string()])).collect())),
        Format::Csv => p.iter().map(|(b, c)| format!("{},{c}\n", csv_field(&b.to_string()))).collect(),
        Format::Text => p.to_string(),
    }
}

fn render_tensor<B: Basis + Display>(t: &Tensor<B>, format: Format) -> String {
    match format {
        Format::Json => pretty(&Value::Array(t.iter().map(|((l, r), c)| json!([l.to_string(), r.to_string(), c.to_string()])).collect())),
        Format::Csv => t.iter().map(|((l, r), c)| format!("{},{},{c}\n", csv_field(&l.to_string()), csv_field(&r.to_string()))).collect(),
        Format::Text => t.tensor_text(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn render_series<B: Basis + Display>(s: &GradedSeries<B>, format: Format) -> String {
    match format {
        Format::Json => pretty(&s.to_json()),
        _ => s.to_string(),
    }
}

fn render_lb(s: &LBSeries, format: Format) -> String {
    match format {
        Format::Json => pretty(&s.to_json()),
        _ => format!("{}: {}", s.kind(), s.data()),
    }
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.global.format;
    match &cli.command {
        Command::Shuffle { .. }
        | Command::Deconcat { .. }
        | Command::Deshuffle { .. }
        | Command::Coproduct { .. }
        | Command::Antipode { .. }
        | Command::Euler { .. }
        | Command::Dynkin { .. }
        | Command::Gamma { .. } => match &cli.global.letters {
            Some(letters_arg) => {
                let alphabet = letter_alphabet(letters_arg)?;
                let parse = |s: &str| alphabet.parse_word(s);
                word_command(&cli.command, alphabet.clone(), &parse, None, format)
            }
            None => {
                let set = colors(cli)?;
                let parse = |s: &str| set.parse(s);
                word_command(&cli.command, set.clone(), &parse, Some(HnHopf::new(set.clone())), format)
            }
        },
        Command::Graft { left, right } | Command::Glprod { left, right } => {
            let set = colors(cli)?;
            let (l, r) = (set.parse(left)?, set.parse(right)?);
            let out = if matches!(cli.command, Command::Graft { .. }) { left_graft(&l, &r) } else { gl_product(&l, &r) };
            Ok(render_lincomb(&out, format))
        }
        Command::Bell { n, k } => {
            let p = match k {
                Some(k) => bell::partial_bell(*n, *k)?,
                None => bell::bell(*n),
            };
            Ok(render_lincomb(&p, format))
        }
        Command::Qpoly { n, k } => {
            let p = match k {
                Some(k) => bell::q_poly(*n, *k)?,
                None => bell::q_full(*n),
            };
            Ok(render_lincomb(&p, format))
        }
        Command::FdbCoproduct { word } => {
            let w: BellWord = bell::parse_word(word)?;
            Ok(render_tensor(&bell::fdb_coproduct_word(&w), format))
        }
        Command::ExactSeries { n } => Ok(render_lb(&lbseries::exact_solution(&colors(cli)?, *n)?, format)),
        Command::EulerSeries { n } => Ok(render_lb(&lbseries::euler_method_series(&colors(cli)?, *n), format)),
        Command::Convert { input, to } => {
            let s = LBSeries::from_json(&read_input(input)?, None)?;
            let kind = match to {
                KindArg::Type1 => Kind::Type1,
                KindArg::Type2 => Kind::Type2,
                KindArg::Type3 => Kind::Type3,
            };
            Ok(render_lb(&s.to_kind(kind)?, format))
        }
        Command::Compose { left, right } => {
            let a = LBSeries::from_json(&read_input(left)?, Some(Kind::Type3))?;
            let b = LBSeries::from_json(&read_input(right)?, Some(Kind::Type3))?;
            Ok(render_lb(&lbseries::compose_type3(&a, &b)?, format))
        }
        Command::Invert { input } => {
            let a = LBSeries::from_json(&read_input(input)?, Some(Kind::Type3))?;
            Ok(render_lb(&lbseries::inverse_type3(&a)?, format))
        }
        Command::BackwardError { input } => {
            let a = LBSeries::from_json(&read_input(input)?, Some(Kind::Type3))?;
            Ok(render_lb(&lbseries::backward_error(&a)?, format))
        }
        Command::Substitute { forest, map, trunc } => {
            let set = colors(cli)?;
            let sub = Substitution::from_json(&set, &read_input(map)?)?;
            Ok(render_lincomb(&sub.apply_forest(&set.parse(forest)?, *trunc), format))
        }
        Command::Integrate { method, problem, h, t_end } => numeric::integrate(*method, *problem, *h, *t_end),
        Command::Convergence { problem, from, to, t_end } => numeric::convergence(*problem, *from, *to, *t_end, format),
    }
}

fn word_command<A, L>(
    cmd: &Command,
    alphabet: A,
    parse: &dyn Fn(&str) -> lbhopf_core::Result<Word<L>>,
    hn: Option<HnHopf>,
    format: Format,
) -> Outcome
where
    A: Alphabet<Letter = L> + Clone,
    L: Letter,
    Word<L>: Display,
    HnHopf: GradedHopf,
{
    let sh = ShuffleHopf::new(alphabet.clone());
    let conc = ConcatHopf::new(alphabet);
    let need_hn = || Failure::Usage("--hopf hn needs forests; drop --letters".into());
    match cmd {
        Command::Shuffle { left, right } => Ok(render_lincomb(&wordhopf::shuffle(&parse(left)?, &parse(right)?), format)),
        Command::Deconcat { word } => Ok(render_tensor(&wordhopf::deconcat(&parse(word)?), format)),
        Command::Deshuffle { word } => Ok(render_tensor(&wordhopf::deshuffle(&parse(word)?), format)),
        Command::Coproduct { word, hopf } => {
            let w = parse(word)?;
            match hopf {
                HopfChoice::Sh => Ok(render_tensor(&sh.coproduct(&w), format)),
                HopfChoice::Conc => Ok(render_tensor(&conc.coproduct(&w), format)),
                HopfChoice::Hn => {
                    let hn = hn.ok_or_else(need_hn)?;
                    let f = hn.colors().parse(word)?;
                    Ok(render_tensor(&hn.delta_n(&f), format))
                }
            }
        }
        Command::Antipode { word, hopf } => {
            let w = parse(word)?;
            match hopf {
                HopfChoice::Sh => Ok(render_lincomb(&sh.antipode(&w), format)),
                HopfChoice::Conc => Ok(render_lincomb(&conc.antipode(&w), format)),
                HopfChoice::Hn => {
                    let hn = hn.ok_or_else(need_hn)?;
                    Ok(render_lincomb(&hn.antipode_n(&hn.colors().parse(word)?), format))
                }
            }
        }
        Command::Euler { word, hopf } | Command::Dynkin { word, hopf, .. } => {
            let idempotent = matches!(cmd, Command::Dynkin { idempotent: true, .. });
            let dynkin = matches!(cmd, Command::Dynkin { .. });
            let w = parse(word)?;
            let n = w.degree();
            match hopf {
                HopfChoice::Sh => Ok(render_lincomb(&apply_operator(&sh, &w, n, dynkin, idempotent)?, format)),
                HopfChoice::Conc => Ok(render_lincomb(&apply_operator(&conc, &w, n, dynkin, idempotent)?, format)),
                HopfChoice::Hn => {
                    let hn = hn.ok_or_else(need_hn)?;
                    let f = hn.colors().parse(word)?;
                    Ok(render_lincomb(&apply_operator(&hn, &f, n, dynkin, idempotent)?, format))
                }
            }
        }
        Command::Gamma { input } => {
            let series = GradedSeries::from_json(&read_input(input)?, |s| parse(s))?;
            Ok(render_series(&wordhopf::gamma(&sh, &series)?, format))
        }
        _ => unreachable!("dispatched by run"),
    }
}

fn apply_operator<H: GradedHopf>(h: &H, w: &H::B, n: usize, dynkin: bool, idempotent: bool) -> Result<LinComb<H::B>, Failure> {
    let endo = match (dynkin, idempotent) {
        (false, _) => wordhopf::eulerian_idempotent(h, n)?,
        (true, false) => wordhopf::dynkin(h, n)?,
        (true, true) => wordhopf::dynkin_idempotent(h, n)?,
    };
    Ok(endo.image(w)?.clone())
}

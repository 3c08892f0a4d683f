//! One interactive or scripted session: the active ring, named modules, and the report log.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use gorinj::gorenstein::{
    check_cor_2_3, check_lemma_2_1, check_prop_2_2, check_prop_2_4, check_thm_4_1, filtration,
    is_gorenstein_injective, tor_gi_experiment, Filtration,
};
use gorinj::module::syntax::{evaluate, MExpr};
use gorinj::module::gamma;
use gorinj::tor::{cosyzygy, injective_hull, min_inj_res_of_ring, TorTable};
use gorinj::{parse_ring, Error, PrimeSpec, Ring, TameModule};

use crate::command::{parse_line, CheckArg, Command, PrimeArg, Theorem};
use crate::report::{emit_report, CaseRecord, ReportDocument, EXPERIMENT_OPERATION};
use crate::sweep::{filtration_case, run_sweep};

#[derive(Debug)]
pub enum SessionError {
    Module(Error),
    NoRing,
    Io(String),
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::Module(e) => write!(f, "{e}"),
            SessionError::NoRing => write!(f, "no ring is active; start with `ring <descriptor>`"),
            SessionError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SessionError {}

impl From<Error> for SessionError {
    fn from(e: Error) -> Self {
        SessionError::Module(e)
    }
}

/// A script line that failed, 1-based.
#[derive(Debug)]
pub struct ScriptError {
    pub line: usize,
    pub error: SessionError,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

#[derive(Default)]
pub struct Session {
    ring: Option<Ring>,
    names: BTreeMap<String, TameModule>,
    report: ReportDocument,
    table: TorTable,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    pub fn with_table(table: TorTable) -> Self {
        Session { table, ..Session::default() }
    }

    pub fn ring(&self) -> Option<&Ring> {
        self.ring.as_ref()
    }

    pub fn report(&self) -> &ReportDocument {
        &self.report
    }

    pub fn lookup(&self, name: &str) -> Option<&TameModule> {
        self.names.get(name)
    }

    /// Parses and executes one line; blank lines and comments yield `None`.
    pub fn run_line(&mut self, line: &str) -> Result<Option<String>, SessionError> {
        match parse_line(line)? {
            Some(cmd) => self.execute(&cmd).map(Some),
            None => Ok(None),
        }
    }

    /// Runs every line, stopping at the first error.
    pub fn run_script(&mut self, text: &str) -> Result<Vec<String>, ScriptError> {
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            match self.run_line(line) {
                Ok(Some(s)) => out.push(s),
                Ok(None) => {}
                Err(error) => return Err(ScriptError { line: i + 1, error }),
            }
        }
        Ok(out)
    }

    fn active(&self) -> Result<&Ring, SessionError> {
        self.ring.as_ref().ok_or(SessionError::NoRing)
    }

    fn eval(&self, e: &MExpr) -> Result<TameModule, SessionError> {
        let ring = self.active()?;
        Ok(evaluate(ring, e, &|n| self.names.get(n).cloned())?)
    }

    fn prime(&self, p: &PrimeArg) -> Result<PrimeSpec, SessionError> {
        let ring = self.active()?;
        Ok(match p {
            PrimeArg::Zero => ring.zero_ideal()?,
            PrimeArg::Generator(g) => ring.prime(&ring.parse_repr(g)?)?,
        })
    }

    fn record(&mut self, operation: &str, inputs: Vec<String>, output: &str, verdict: bool, start: Instant) {
        let case = CaseRecord::new(operation, inputs, output, verdict).with_elapsed(start.elapsed().as_secs_f64());
        self.report.push(case);
    }

    pub fn execute(&mut self, cmd: &Command) -> Result<String, SessionError> {
        let start = Instant::now();
        match cmd {
            Command::SetRing(desc) => {
                let ring = parse_ring(desc)?;
                let text = ring.to_string();
                self.report.ring = Some(text.clone());
                self.ring = Some(ring);
                self.names.clear();
                Ok(format!("ring {text}"))
            }
            Command::Let(name, e) => {
                let m = self.eval(e)?;
                let out = format!("{name} = {m}");
                self.names.insert(name.clone(), m);
                Ok(out)
            }
            Command::Tensor(a, b) => {
                let (m, n) = (self.eval(a)?, self.eval(b)?);
                let r = self.table.tensor(&m, &n)?;
                self.record("tensor", vec![m.to_string(), n.to_string()], &r.to_string(), true, start);
                Ok(r.to_string())
            }
            Command::Tor(k, a, b) => {
                let (m, n) = (self.eval(a)?, self.eval(b)?);
                let r = self.table.tor(*k, &m, &n)?;
                let inputs = vec![format!("k={k}"), m.to_string(), n.to_string()];
                self.record("tor", inputs, &r.to_string(), true, start);
                Ok(r.to_string())
            }
            Command::Hull(a) => {
                let m = self.eval(a)?;
                let r = injective_hull(&m);
                self.record("hull", vec![m.to_string()], &r.to_string(), true, start);
                Ok(r.to_string())
            }
            Command::Cosyzygy(a) => {
                let m = self.eval(a)?;
                let r = cosyzygy(&m);
                self.record("cosyz", vec![m.to_string()], &r.to_string(), true, start);
                Ok(r.to_string())
            }
            Command::ResolveRing => {
                let ring = self.active()?.clone();
                let res = min_inj_res_of_ring(&ring);
                let terms: Vec<String> =
                    res.terms().iter().enumerate().map(|(k, t)| format!("E^{k} = {t}")).collect();
                let out = terms.join("\n");
                self.record("resolve", vec![ring.to_string()], &terms.join("; "), true, start);
                Ok(out)
            }
            Command::Gamma(p, a) => {
                let p = self.prime(p)?;
                let m = self.eval(a)?;
                let r = gamma(&p, &m)?;
                self.record("gamma", vec![p.to_string(), m.to_string()], &r.to_string(), true, start);
                Ok(r.to_string())
            }
            Command::Filtration(a) => {
                let m = self.eval(a)?;
                let f = filtration(&m)?;
                let table = render_filtration(&f);
                self.record("filtration", vec![m.to_string()], &table.replace('\n', "; "), true, start);
                Ok(table)
            }
            Command::IsGI(a) => {
                let m = self.eval(a)?;
                let c = is_gorenstein_injective(&m);
                let ok = c.verify(&m);
                self.record("is_gi", vec![m.to_string()], &c.to_string(), ok, start);
                Ok(c.to_string())
            }
            Command::Check(t, args) => self.check(*t, args, start),
            Command::Sweep(bounds) => {
                let ring = self.active()?.clone();
                let cases = run_sweep(&ring, bounds, &self.table)?;
                let n = cases.len();
                let failed = cases.iter().filter(|c| !c.verdict).count();
                self.report.extend(cases);
                Ok(format!("sweep: {n} cases, {failed} failures"))
            }
            Command::Report(path, format) => {
                emit_report(&self.report, std::path::Path::new(path), *format)
                    .map_err(|e| SessionError::Io(format!("cannot write {path}: {e}")))?;
                Ok(format!("wrote {path}"))
            }
        }
    }

    fn check(&mut self, t: Theorem, args: &[CheckArg], start: Instant) -> Result<String, SessionError> {
        let mut primes = Vec::new();
        let mut modules = Vec::new();
        let mut ints = Vec::new();
        let mut inputs = Vec::new();
        for a in args {
            match a {
                CheckArg::Prime(p) => {
                    let p = self.prime(p)?;
                    inputs.push(p.to_string());
                    primes.push(p);
                }
                CheckArg::Module(e) => {
                    let m = self.eval(e)?;
                    inputs.push(m.to_string());
                    modules.push(m);
                }
                CheckArg::Int(k) => {
                    inputs.push(format!("k={k}"));
                    ints.push(*k);
                }
            }
        }
        let (operation, output, verdict) = match t {
            Theorem::Lemma21 => {
                let ok = check_lemma_2_1(&primes[0], &modules[0])?;
                (t.id(), ok.to_string(), ok)
            }
            Theorem::Prop22 => {
                let ok = check_prop_2_2(&primes[0], &modules[0], ints[0])?;
                (t.id(), ok.to_string(), ok)
            }
            Theorem::Cor23 => {
                let ok = check_cor_2_3(&modules[0], &modules[1], ints[0])?;
                (t.id(), ok.to_string(), ok)
            }
            Theorem::Prop24 => {
                let ok = check_prop_2_4(&modules[0], &modules[1], ints[0])?;
                (t.id(), ok.to_string(), ok)
            }
            Theorem::Thm31 => {
                let (out, ok) = filtration_case(&modules[0])?;
                ("thm3.1 filtration", out, ok)
            }
            Theorem::Thm41 => {
                let c = check_thm_4_1(&modules[0], &modules[1])?;
                (t.id(), format!("{}; gi = {}; reduces = {}", c.product, c.gi, c.reduces_to_top), c.holds())
            }
            Theorem::Rmk42 => {
                let e = tor_gi_experiment(ints[0], &modules[0], &modules[1])?;
                (EXPERIMENT_OPERATION, format!("{}; gi = {}", e.value, e.gi), true)
            }
        };
        self.record(operation, inputs, &output, verdict, start);
        Ok(format!("{output}{}", if verdict { "" } else { "  [FAILED]" }))
    }
}

/// `k  P  summand` rows, top layer first.
pub fn render_filtration(f: &Filtration) -> String {
    let mut rows: Vec<(String, String, String)> = Vec::new();
    for layer in f.layers().iter().rev() {
        for (p, s) in &layer.summands {
            rows.push((layer.k.to_string(), p.to_string(), s.to_string()));
        }
        if layer.omni > 0 {
            rows.push((layer.k.to_string(), "other".into(), format!("Omega1^{}", layer.omni)));
        }
    }
    let w1 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(1);
    let w2 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(1);
    let mut out = format!("{:<w1$}  {:<w2$}  summand", "k", "P");
    for (k, p, s) in rows {
        let _ = write!(out, "\n{k:<w1$}  {p:<w2$}  {s}");
    }
    out
}

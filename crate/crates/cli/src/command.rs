//! Line grammar for the REPL and batch scripts.

use std::fmt;

use gorinj::module::syntax::{parse_mexpr, Cursor, MExpr};
use gorinj::Result;

/// A prime argument: `0` for the zero ideal, otherwise a generator literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeArg {
    Zero,
    Generator(String),
}

impl fmt::Display for PrimeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeArg::Zero => write!(f, "0"),
            PrimeArg::Generator(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    Lemma21,
    Prop22,
    Cor23,
    Prop24,
    Thm31,
    Thm41,
    Rmk42,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Lemma21,
        Theorem::Prop22,
        Theorem::Cor23,
        Theorem::Prop24,
        Theorem::Thm31,
        Theorem::Thm41,
        Theorem::Rmk42,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::Lemma21 => "lemma2.1",
            Theorem::Prop22 => "prop2.2",
            Theorem::Cor23 => "cor2.3",
            Theorem::Prop24 => "prop2.4",
            Theorem::Thm31 => "thm3.1",
            Theorem::Thm41 => "thm4.1",
            Theorem::Rmk42 => "rmk4.2",
        }
    }

    pub fn from_id(s: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.id() == s)
    }

    /// Argument shape expected after the theorem id.
    pub fn signature(&self) -> &'static [ArgKind] {
        use ArgKind::*;
        match self {
            Theorem::Lemma21 => &[Prime, Module],
            Theorem::Prop22 => &[Prime, Module, Int],
            Theorem::Cor23 => &[Module, Module, Int],
            Theorem::Prop24 => &[Module, Module, Int],
            Theorem::Thm31 => &[Module],
            Theorem::Thm41 => &[Module, Module],
            Theorem::Rmk42 => &[Int, Module, Module],
        }
    }

    pub fn usage(&self) -> &'static str {
        match self {
            Theorem::Lemma21 => "check lemma2.1 <prime> <G>",
            Theorem::Prop22 => "check prop2.2 <prime> <G> <k>",
            Theorem::Cor23 => "check cor2.3 <G> <E> <k>",
            Theorem::Prop24 => "check prop2.4 <E> <G> <k>",
            Theorem::Thm31 => "check thm3.1 <G>",
            Theorem::Thm41 => "check thm4.1 <G> <H>",
            Theorem::Rmk42 => "check rmk4.2 <k> <G> <H>",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Prime,
    Module,
    Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckArg {
    Prime(PrimeArg),
    Module(MExpr),
    Int(u32),
}

impl fmt::Display for CheckArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckArg::Prime(p) => write!(f, "{p}"),
            CheckArg::Module(m) => write!(f, "{m}"),
            CheckArg::Int(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    /// Prime generators as typed; empty means every minimal prime (Artinian rings only).
    pub primes: Vec<String>,
    pub max_exp: u32,
    pub max_atoms: u32,
    pub tor_max: u32,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds { primes: Vec::new(), max_exp: 2, max_atoms: 2, tor_max: 2 }
    }
}

impl fmt::Display for SweepBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.primes.is_empty() {
            write!(f, " --primes {}", self.primes.join(","))?;
        }
        write!(f, " --max-exp {} --max-atoms {} --tor-max {}", self.max_exp, self.max_atoms, self.tor_max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    SetRing(String),
    Let(String, MExpr),
    Tensor(MExpr, MExpr),
    Tor(u32, MExpr, MExpr),
    Hull(MExpr),
    Cosyzygy(MExpr),
    ResolveRing,
    Gamma(PrimeArg, MExpr),
    Filtration(MExpr),
    IsGI(MExpr),
    Check(Theorem, Vec<CheckArg>),
    Sweep(SweepBounds),
    Report(String, ReportFormat),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::SetRing(d) => write!(f, "ring {d}"),
            Command::Let(n, e) => write!(f, "let {n} = {e}"),
            Command::Tensor(a, b) => write!(f, "tensor {a} {b}"),
            Command::Tor(k, a, b) => write!(f, "tor {k} {a} {b}"),
            Command::Hull(a) => write!(f, "hull {a}"),
            Command::Cosyzygy(a) => write!(f, "cosyz {a}"),
            Command::ResolveRing => write!(f, "resolve"),
            Command::Gamma(p, a) => write!(f, "gamma {p} {a}"),
            Command::Filtration(a) => write!(f, "filtration {a}"),
            Command::IsGI(a) => write!(f, "is_gi {a}"),
            Command::Check(t, args) => {
                write!(f, "check {t}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
            Command::Sweep(b) => write!(f, "sweep{b}"),
            Command::Report(p, ReportFormat::Text) => write!(f, "report {p}"),
            Command::Report(p, ReportFormat::Json) => write!(f, "report {p} --json"),
        }
    }
}

/// Parses one command line. Blank lines and `#` comments are `None`.
pub fn parse_line(line: &str) -> Result<Option<Command>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    if body.trim().is_empty() {
        return Ok(None);
    }
    parse_command(body).map(Some)
}

pub fn parse_command(line: &str) -> Result<Command> {
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    let start = cur.pos;
    let Some(keyword) = cur.word() else {
        return Err(cur.error("empty command"));
    };
    let cmd = match keyword.as_str() {
        "ring" => {
            cur.skip_ws();
            let d = cur.rest();
            if d.is_empty() {
                return Err(cur.error("expected a ring descriptor"));
            }
            Command::SetRing(d)
        }
        "let" => {
            cur.skip_ws();
            let at = cur.pos;
            let name = cur.identifier().ok_or_else(|| cur.error("expected a name"))?;
            if !gorinj::module::syntax::is_identifier(&name) {
                cur.pos = at;
                return Err(cur.error(format!("'{name}' is reserved")));
            }
            cur.skip_ws();
            cur.expect("=")?;
            Command::Let(name, module(&mut cur)?)
        }
        "tensor" => Command::Tensor(module(&mut cur)?, module(&mut cur)?),
        "tor" => {
            let k = int(&mut cur)?;
            Command::Tor(k, module(&mut cur)?, module(&mut cur)?)
        }
        "hull" => Command::Hull(module(&mut cur)?),
        "cosyz" => Command::Cosyzygy(module(&mut cur)?),
        "resolve" => Command::ResolveRing,
        "gamma" => Command::Gamma(prime(&mut cur)?, module(&mut cur)?),
        "filtration" => Command::Filtration(module(&mut cur)?),
        "is_gi" => Command::IsGI(module(&mut cur)?),
        "check" => {
            cur.skip_ws();
            let at = cur.pos;
            let id = cur.word().ok_or_else(|| cur.error("expected a theorem id"))?;
            let Some(t) = Theorem::from_id(&id) else {
                cur.pos = at;
                let ids: Vec<&str> = Theorem::ALL.iter().map(|t| t.id()).collect();
                return Err(cur.error(format!("unknown theorem '{id}', expected one of {}", ids.join(", "))));
            };
            let mut args = Vec::new();
            for kind in t.signature() {
                args.push(match kind {
                    ArgKind::Prime => CheckArg::Prime(prime(&mut cur)?),
                    ArgKind::Module => CheckArg::Module(module(&mut cur)?),
                    ArgKind::Int => CheckArg::Int(int(&mut cur)?),
                });
            }
            Command::Check(t, args)
        }
        "sweep" => Command::Sweep(sweep_flags(&mut cur)?),
        "report" => {
            cur.skip_ws();
            let path = cur.word().ok_or_else(|| cur.error("expected a report path"))?;
            let format = if cur.at_end() {
                ReportFormat::Text
            } else {
                let at = cur.pos;
                match cur.word().as_deref() {
                    Some("--json") => ReportFormat::Json,
                    _ => {
                        cur.pos = at;
                        return Err(cur.error("expected --json or end of line"));
                    }
                }
            };
            Command::Report(path, format)
        }
        other => {
            cur.pos = start;
            return Err(cur.error(format!("unknown command '{other}'")));
        }
    };
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(cmd)
}

fn module(cur: &mut Cursor<'_>) -> Result<MExpr> {
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.error("expected a module expression"));
    }
    parse_mexpr(cur)
}

fn int(cur: &mut Cursor<'_>) -> Result<u32> {
    cur.skip_ws();
    let n = cur.unsigned()?;
    u32::try_from(n).map_err(|_| cur.error("integer out of range"))
}

fn prime(cur: &mut Cursor<'_>) -> Result<PrimeArg> {
    let w = cur.word().ok_or_else(|| cur.error("expected a prime generator or 0"))?;
    Ok(if w == "0" { PrimeArg::Zero } else { PrimeArg::Generator(w) })
}

fn sweep_flags(cur: &mut Cursor<'_>) -> Result<SweepBounds> {
    let mut b = SweepBounds::default();
    let mut seen = Vec::new();
    while !cur.at_end() {
        let at = cur.pos;
        let flag = cur.word().unwrap();
        if seen.contains(&flag) {
            cur.pos = at;
            return Err(cur.error(format!("duplicate flag {flag}")));
        }
        match flag.as_str() {
            "--primes" => {
                let list = cur.word().ok_or_else(|| cur.error("expected a prime list"))?;
                b.primes = list.split(',').map(str::to_string).collect();
                if b.primes.iter().any(|p| p.is_empty()) {
                    return Err(cur.error("empty entry in prime list"));
                }
            }
            "--max-exp" => b.max_exp = int(cur)?,
            "--max-atoms" => b.max_atoms = int(cur)?,
            "--tor-max" => b.tor_max = int(cur)?,
            _ => {
                cur.pos = at;
                return Err(cur.error(format!("unknown sweep flag '{flag}'")));
            }
        }
        seen.push(flag);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gorinj::module::syntax::AtomLit;

    #[test]
    fn let_binding() {
        let c = parse_command("let G = Q^2 (+) Pr(2)").unwrap();
        let Command::Let(name, e) = &c else { panic!("{c:?}") };
        assert_eq!(name, "G");
        assert_eq!(e.to_string(), "Q^2 (+) Pr(2)");
    }

    #[test]
    fn tor_line() {
        let c = parse_command("tor 1 Pr(2) Pr(2)").unwrap();
        let pr = MExpr::Atom(AtomLit::Prufer { generator: "2".into() });
        assert_eq!(c, Command::Tor(1, pr.clone(), pr));
    }

    #[test]
    fn check_line() {
        let c = parse_command("check thm4.1 G G").unwrap();
        let g = MExpr::Name("G".into());
        assert_eq!(c, Command::Check(Theorem::Thm41, vec![CheckArg::Module(g.clone()), CheckArg::Module(g)]));
    }

    #[test]
    fn sums_split_on_whitespace() {
        let c = parse_command("tensor Q (+) Pr(2) Pr(3)").unwrap();
        assert_eq!(c.to_string(), "tensor Q (+) Pr(2) Pr(3)");
    }

    #[test]
    fn comments_and_blanks() {
        assert_eq!(parse_line("   # nothing").unwrap(), None);
        assert_eq!(parse_line("resolve # trailing").unwrap(), Some(Command::ResolveRing));
    }

    #[test]
    fn sweep_flags_parse() {
        let c = parse_command("sweep --primes 2,3 --max-exp 2 --max-atoms 3").unwrap();
        let Command::Sweep(b) = &c else { panic!() };
        assert_eq!(b.primes, vec!["2", "3"]);
        assert_eq!((b.max_exp, b.max_atoms, b.tor_max), (2, 3, 2));
        assert_eq!(parse_command(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_command("tor x Q Q") {
            Err(gorinj::Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_command("frobnicate Q").is_err());
        assert!(parse_command("check thm9.9 Q").is_err());
        assert!(parse_command("let Q = Q").is_err());
        assert!(parse_command("hull Q Q").is_err());
    }
}

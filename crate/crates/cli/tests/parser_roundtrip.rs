use num_bigint::BigInt;
use proptest::prelude::*;

use gorinj::module::syntax::{AtomLit, MExpr};
use gorinj_cli::command::{
    parse_command, parse_line, ArgKind, CheckArg, Command, PrimeArg, ReportFormat, SweepBounds, Theorem,
};

fn generator() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["2", "3", "5", "7", "x", "x+1", "x^2+x+1", "x-1", "2*x+1"]).prop_map(str::to_string)
}

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z_][a-zA-Z0-9_]{0,6}".prop_filter("reserved", |s| gorinj::module::syntax::is_identifier(s))
}

fn primary() -> impl Strategy<Value = MExpr> {
    prop_oneof![
        Just(MExpr::Atom(AtomLit::Zero)),
        Just(MExpr::Atom(AtomLit::Free)),
        Just(MExpr::Atom(AtomLit::Fraction('Q'))),
        Just(MExpr::Atom(AtomLit::Fraction('K'))),
        Just(MExpr::Atom(AtomLit::Omni)),
        (generator(), 1u32..9).prop_map(|(generator, exponent)| MExpr::Atom(AtomLit::Cyclic { generator, exponent })),
        generator().prop_map(|generator| MExpr::Atom(AtomLit::Prufer { generator })),
        (1u64..1000).prop_map(|n| MExpr::Atom(AtomLit::Quotient(BigInt::from(n)))),
        name().prop_map(MExpr::Name),
    ]
}

fn term() -> impl Strategy<Value = MExpr> {
    (primary(), prop::option::of(0u64..20)).prop_map(|(p, k)| match k {
        Some(k) => MExpr::Power(Box::new(p), k),
        None => p,
    })
}

fn mexpr() -> impl Strategy<Value = MExpr> {
    prop::collection::vec(term(), 1..4).prop_map(|mut v| if v.len() == 1 { v.pop().unwrap() } else { MExpr::Sum(v) })
}

fn prime_arg() -> impl Strategy<Value = PrimeArg> {
    prop_oneof![Just(PrimeArg::Zero), generator().prop_map(PrimeArg::Generator)]
}

fn check() -> impl Strategy<Value = Command> {
    prop::sample::select(Theorem::ALL.to_vec()).prop_flat_map(|t| {
        let args: Vec<BoxedStrategy<CheckArg>> = t
            .signature()
            .iter()
            .map(|k| match k {
                ArgKind::Prime => prime_arg().prop_map(CheckArg::Prime).boxed(),
                ArgKind::Module => mexpr().prop_map(CheckArg::Module).boxed(),
                ArgKind::Int => (0u32..10).prop_map(CheckArg::Int).boxed(),
            })
            .collect();
        args.prop_map(move |a| Command::Check(t, a))
    })
}

fn sweep() -> impl Strategy<Value = Command> {
    (prop::collection::vec(generator(), 0..4), 0u32..6, 0u32..6, 0u32..6).prop_map(|(primes, e, a, k)| {
        Command::Sweep(SweepBounds { primes, max_exp: e, max_atoms: a, tor_max: k })
    })
}

fn command() -> impl Strategy<Value = Command> {
    prop_oneof![
        prop::sample::select(vec!["Z", "Z/12", "Q[x]", "F2[x]", "F2[x]/(x^3)", "Z/360"])
            .prop_map(|d| Command::SetRing(d.to_string())),
        (name(), mexpr()).prop_map(|(n, e)| Command::Let(n, e)),
        (mexpr(), mexpr()).prop_map(|(a, b)| Command::Tensor(a, b)),
        (0u32..10, mexpr(), mexpr()).prop_map(|(k, a, b)| Command::Tor(k, a, b)),
        mexpr().prop_map(Command::Hull),
        mexpr().prop_map(Command::Cosyzygy),
        Just(Command::ResolveRing),
        (prime_arg(), mexpr()).prop_map(|(p, e)| Command::Gamma(p, e)),
        mexpr().prop_map(Command::Filtration),
        mexpr().prop_map(Command::IsGI),
        check(),
        sweep(),
        ("[a-z0-9_/.]{1,12}", any::<bool>()).prop_map(|(p, json)| {
            Command::Report(p, if json { ReportFormat::Json } else { ReportFormat::Text })
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(cmd in command()) {
        let line = cmd.to_string();
        prop_assert_eq!(parse_command(&line).unwrap(), cmd.clone());
        prop_assert_eq!(parse_line(&format!("  {line}   # trailing comment")).unwrap(), Some(cmd));
    }
}

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use lattidyn::cover::{
    components, equivalent, finest_cover, minimal_subcover, order, proper_maximal_elements, square,
    wedge,
};
use lattidyn::dynamics::{
    dimension, is_expansive, is_expansivity_cover, is_positive_expansivity_cover,
    is_positively_expansive, mane_dimension_certificate, stabilize, utz_bound, utz_generator,
    utz_return_time, LatticeAutomorphism, Mode, SelfMap, UnitalMorphism,
};
use lattidyn::entropy::{expansive_entropy, relative_entropy, EntropySequence};
use lattidyn::json::{
    canonical_labels, round12, AutomorphismSpec, CoverSpec, MapSpec, PosetSpec, SymbolPosetSpec,
};
use lattidyn::sample::{random_downset, rng};
use lattidyn::shift::{
    shift_entropy, shift_expansivity_check, symmetric_cylinder_cover, SymbolPoset,
};
use lattidyn::topology::{
    induced_automorphism, induced_morphism, open_lattice, ContinuousMap, FiniteSpace, SpaceSpec,
};
use lattidyn::{Cover, Downset, Error, Poset};

#[derive(Parser)]
#[command(
    name = "lattidyn",
    version,
    about = "Dynamics on finite distributive lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    inputs: Inputs,
}

#[derive(Args)]
struct Inputs {
    /// Poset JSON: {"points": [...], "leq": [[lower, upper], ...]}
    #[arg(long, global = true)]
    poset: Option<PathBuf>,
    /// Automorphism JSON: {"permutation": {"a": "b", ...}}
    #[arg(long, global = true)]
    auto: Option<PathBuf>,
    /// Morphism JSON: {"map": {"q": "p", ...}}, acting by preimage
    #[arg(long, global = true)]
    morphism: Option<PathBuf>,
    /// Cover JSON: a list of downsets, each a list of labels. Repeatable.
    #[arg(long, global = true)]
    cover: Vec<PathBuf>,
    /// Symbol poset JSON: {"symbols": [...], "leq": [...]}
    #[arg(long, global = true)]
    symbols: Option<PathBuf>,
    /// Space JSON: {"points": [...], "opens": [[...], ...]}. Repeatable.
    #[arg(long, global = true)]
    space: Vec<PathBuf>,
    /// Map JSON: {"map": {"x": "y", ...}}
    #[arg(long, global = true)]
    map: Option<PathBuf>,
    /// Iteration budget for trajectories and entropy sequences.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    /// Depth of exact checks (shift counts, certificates, cylinder radius).
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    check: u64,
    /// Cap on enumerated lattice elements and shift words.
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    search_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized law checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a poset and summarize its order.
    PosetCheck,
    /// Size, join-irreducibles and proper maximal elements of L(P).
    LatticeInfo,
    /// Cover calculus on --cover inputs.
    Cover {
        #[arg(value_enum)]
        op: CoverOp,
    },
    /// Decide expansivity of an automorphism.
    Expansive,
    /// Decide positive expansivity of an automorphism or morphism.
    PositivelyExpansive,
    /// Covering dimension of L(P).
    Dim,
    /// Dimension certificates built from an expansivity cover.
    ManeCert,
    /// Generator and subcover bound of a positively expansive automorphism.
    Utz,
    /// Entropy sequence of a cover (finest cover by default).
    Entropy,
    /// Exact entropy of the shift over a symbol poset.
    ShiftEntropy,
    /// Least depth at which the wedge of 0-cylinders refines the radius-m cylinder cover.
    ShiftExpansive,
    /// Finite topological spaces.
    Topo {
        #[arg(value_enum)]
        op: TopoOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverOp {
    Refines,
    Wedge,
    Order,
    Square,
    Components,
    Minsub,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopoOp {
    Validate,
    Lattice,
    Morphism,
}

enum Failure {
    Domain(Error),
    Parse(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn report(&self) -> (Value, u8) {
        let (kind, message, code) = match self {
            Failure::Domain(e) => (e.kind(), e.to_string(), if e.is_budget() { 2 } else { 1 }),
            Failure::Parse(m) => ("ParseError", m.clone(), 1),
            Failure::Usage(m) => ("UsageError", m.clone(), 1),
        };
        (json!({"error": {"kind": kind, "message": message}}), code)
    }
}

type Run = Result<Value, Failure>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Failure> {
    p.as_deref()
        .ok_or_else(|| Failure::Usage(format!("this command needs {flag}")))
}

fn labels(c: &Cover) -> Value {
    json!(canonical_labels(c))
}

fn downsets(poset: &Poset, ds: &[Downset]) -> Value {
    let mut v: Vec<Vec<String>> = ds.iter().map(|d| poset.labels_of(*d)).collect();
    v.sort();
    json!(v)
}

fn entropy_json(s: &EntropySequence) -> Value {
    json!({
        "counts": s.counts,
        "estimates": s.estimates.iter().map(|&x| round12(x)).collect::<Vec<_>>(),
        "upper_bound": round12(s.upper_bound),
        "converged": s.converged,
        "certified": s.certified,
        "value": s.value.map(round12),
        "stabilized_at": s.stabilized_at,
    })
}

struct Ctx {
    inputs: Inputs,
}

impl Ctx {
    fn n_max(&self) -> usize {
        self.inputs.n_max as usize
    }

    fn check(&self) -> usize {
        self.inputs.check as usize
    }

    fn cap(&self) -> usize {
        self.inputs.search_cap as usize
    }

    fn poset(&self) -> Result<Poset, Failure> {
        Ok(read::<PosetSpec>(required(&self.inputs.poset, "--poset")?)?.build()?)
    }

    fn auto(&self, poset: &Poset) -> Result<LatticeAutomorphism, Failure> {
        Ok(read::<AutomorphismSpec>(required(&self.inputs.auto, "--auto")?)?.build(poset)?)
    }

    /// `--auto` or `--morphism`, whichever was given.
    fn self_map(&self, poset: &Poset) -> Result<Box<dyn SelfMap>, Failure> {
        match (&self.inputs.auto, &self.inputs.morphism) {
            (Some(_), None) => Ok(Box::new(self.auto(poset)?)),
            (None, Some(path)) => {
                let m: UnitalMorphism = read::<MapSpec>(path)?.build_morphism(poset)?;
                Ok(Box::new(m))
            }
            _ => Err(Failure::Usage(
                "give exactly one of --auto and --morphism".into(),
            )),
        }
    }

    fn covers(&self, poset: &Poset) -> Result<Vec<Cover>, Failure> {
        self.inputs
            .cover
            .iter()
            .map(|p| Ok(Cover::from_labels(poset, &read::<CoverSpec>(p)?)?))
            .collect()
    }

    fn exact_covers(&self, poset: &Poset, n: usize) -> Result<Vec<Cover>, Failure> {
        let cs = self.covers(poset)?;
        if cs.len() != n {
            return Err(Failure::Usage(format!(
                "this command needs {n} --cover input(s), got {}",
                cs.len()
            )));
        }
        Ok(cs)
    }

    fn optional_cover(&self, poset: &Poset) -> Result<Option<Cover>, Failure> {
        let mut cs = self.covers(poset)?;
        match cs.len() {
            0 => Ok(None),
            1 => Ok(cs.pop()),
            n => Err(Failure::Usage(format!(
                "expected at most one --cover, got {n}"
            ))),
        }
    }

    fn symbols(&self) -> Result<SymbolPoset, Failure> {
        Ok(read::<SymbolPosetSpec>(required(&self.inputs.symbols, "--symbols")?)?.build()?)
    }

    fn spaces(&self) -> Result<Vec<FiniteSpace>, Failure> {
        if self.inputs.space.is_empty() {
            return Err(Failure::Usage("this command needs --space".into()));
        }
        self.inputs
            .space
            .iter()
            .map(|p| Ok(FiniteSpace::from_spec(&read::<SpaceSpec>(p)?)?))
            .collect()
    }
}

fn poset_check(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let pairs: Vec<[&str; 2]> = p
        .covering_pairs()
        .into_iter()
        .map(|(a, b)| [p.label(a), p.label(b)])
        .collect();
    let mut out = json!({
        "points": p.len(),
        "covering_pairs": pairs,
        "maximal": p.maximal_points().iter().map(|&i| p.label(i)).collect::<Vec<_>>(),
        "minimal": p.minimal_points().iter().map(|&i| p.label(i)).collect::<Vec<_>>(),
    });
    if let Some(seed) = ctx.inputs.seed {
        let mut r = rng(seed);
        let trials = 1000;
        let mut failures = 0;
        for _ in 0..trials {
            let (x, y, z) = (
                random_downset(&mut r, &p),
                random_downset(&mut r, &p),
                random_downset(&mut r, &p),
            );
            let distributes = x.meet(y.join(z)?)? == x.meet(y)?.join(x.meet(z)?)?;
            let absorbs = x.join(x.meet(y)?)? == x && x.meet(x.join(y)?)? == x;
            if !(distributes && absorbs) {
                failures += 1;
            }
        }
        out["law_checks"] = json!({"seed": seed, "trials": trials, "failures": failures});
    }
    Ok(out)
}

fn lattice_info(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let elements = p
        .count_downsets(ctx.cap())
        .ok_or(Error::SearchCapExceeded { cap: ctx.cap() })?;
    Ok(json!({
        "points": p.len(),
        "elements": elements,
        "join_irreducibles": downsets(&p, &p.join_irreducibles()),
        "proper_maximal": downsets(&p, &proper_maximal_elements(&p)),
    }))
}

fn cover_op(ctx: &Ctx, op: CoverOp) -> Run {
    let p = ctx.poset()?;
    Ok(match op {
        CoverOp::Refines => {
            let cs = ctx.exact_covers(&p, 2)?;
            json!({
                "refines": cs[0].refines(&cs[1])?,
                "refined_by": cs[1].refines(&cs[0])?,
                "equivalent": equivalent(&cs[0], &cs[1])?,
            })
        }
        CoverOp::Wedge => {
            let cs = ctx.exact_covers(&p, 2)?;
            json!({"cover": labels(&wedge(&cs[0], &cs[1])?)})
        }
        CoverOp::Order => {
            let c = &ctx.exact_covers(&p, 1)?[0];
            json!({"order": order(c)})
        }
        CoverOp::Square => {
            let c = &ctx.exact_covers(&p, 1)?[0];
            json!({"cover": labels(&square(c))})
        }
        CoverOp::Components => {
            let path = match ctx.inputs.cover.as_slice() {
                [one] => one,
                _ => {
                    return Err(Failure::Usage(
                        "components needs exactly one --cover".into(),
                    ))
                }
            };
            let family = read::<CoverSpec>(path)?
                .iter()
                .map(|d| p.downset_from_labels(d))
                .collect::<Result<Vec<_>, _>>()?;
            json!({"components": downsets(&p, &components(&family)?)})
        }
        CoverOp::Minsub => {
            let c = &ctx.exact_covers(&p, 1)?[0];
            let s = minimal_subcover(c);
            let mut members = s.cover.to_labels();
            members.sort();
            json!({"count": s.count, "subcover": members})
        }
    })
}

fn expansive(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let aut = ctx.auto(&p)?;
    let (ok, witness) = is_expansive(&aut, ctx.n_max())?;
    let mut out = json!({"expansive": ok, "witness": witness.as_ref().map(labels)});
    if let Some(u) = ctx.optional_cover(&p)? {
        let t = stabilize(&aut, &u, Mode::TwoSided, ctx.n_max())?;
        out["cover"] = json!({
            "expansivity_cover": is_expansivity_cover(&aut, &u, ctx.n_max())?,
            "stabilized_at": t.stabilized_at,
            "limit": t.limit().map(labels),
        });
    }
    Ok(out)
}

fn positively_expansive(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let map = ctx.self_map(&p)?;
    let (ok, witness) = is_positively_expansive(map.as_ref(), ctx.n_max())?;
    let mut out = json!({"positively_expansive": ok, "witness": witness.as_ref().map(labels)});
    if let Some(u) = ctx.optional_cover(&p)? {
        let t = stabilize(map.as_ref(), &u, Mode::Forward, ctx.n_max())?;
        out["cover"] = json!({
            "positive_expansivity_cover": is_positive_expansivity_cover(map.as_ref(), &u, ctx.n_max())?,
            "stabilized_at": t.stabilized_at,
            "limit": t.limit().map(labels),
        });
    }
    Ok(out)
}

fn dim(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    Ok(json!({"dim": dimension(&p, ctx.cap())?}))
}

fn mane_cert(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let aut = ctx.auto(&p)?;
    let u = match ctx.optional_cover(&p)? {
        Some(u) => u,
        None => finest_cover(&p),
    };
    let mut certs = Vec::new();
    let mut head = Value::Null;
    for n in 0..ctx.check() {
        let c = mane_dimension_certificate(&aut, &u, n, ctx.n_max())?;
        if head.is_null() {
            head = json!({"w": labels(&c.w), "witness_depth": c.witness_depth, "bound": c.bound});
        }
        certs.push(json!({
            "n": n,
            "order": order(&c.cover),
            "cover": labels(&c.cover),
            "wedge": labels(&c.wedge),
        }));
    }
    head["certificates"] = json!(certs);
    head["dim"] = json!(dimension(&p, ctx.cap())?);
    Ok(head)
}

fn utz(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let aut = ctx.auto(&p)?;
    let bound = utz_bound(&aut, ctx.n_max())?;
    let u = match ctx.optional_cover(&p)? {
        Some(u) => u,
        None => finest_cover(&p),
    };
    let (u0, depth) = utz_generator(&aut, &u, ctx.n_max())?;
    let ret = utz_return_time(&aut, &u0, &finest_cover(&p), ctx.n_max())?;
    Ok(json!({
        "bound": bound,
        "generator": labels(&u0),
        "generator_depth": depth,
        "return_time": ret,
    }))
}

fn entropy(ctx: &Ctx) -> Run {
    let p = ctx.poset()?;
    let map = ctx.self_map(&p)?;
    let u = match ctx.optional_cover(&p)? {
        Some(u) => u,
        None => finest_cover(&p),
    };
    let seq = relative_entropy(map.as_ref(), &u, ctx.n_max())?;
    let mut out = entropy_json(&seq);
    out["cover"] = labels(&u);
    if ctx.inputs.auto.is_some() {
        if let Ok((h, _)) = expansive_entropy(&ctx.auto(&p)?, ctx.n_max()) {
            out["expansive_entropy"] = json!(round12(h));
        }
    }
    Ok(out)
}

fn shift_entropy_cmd(ctx: &Ctx) -> Run {
    let s = ctx.symbols()?;
    let r = shift_entropy(&s, ctx.check(), ctx.inputs.search_cap)?;
    Ok(json!({
        "entropy": round12(r.entropy),
        "counts": r.counts,
        "expected": r.expected.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "verified": r.verified,
        "maximal_symbols": r.maximal_symbols,
        "witness": r.witness,
    }))
}

fn shift_expansive(ctx: &Ctx) -> Run {
    let s = ctx.symbols()?;
    let m = ctx.check();
    let v = symmetric_cylinder_cover(&s, m, ctx.inputs.search_cap)?;
    let depth = shift_expansivity_check(&s, &v, ctx.n_max(), ctx.inputs.search_cap)?;
    Ok(json!({"radius": m, "depth": depth}))
}

fn topo(ctx: &Ctx, op: TopoOp) -> Run {
    let spaces = ctx.spaces()?;
    let x = &spaces[0];
    Ok(match op {
        TopoOp::Validate => json!({
            "points": x.len(),
            "opens": x.opens().len(),
            "t0": x.is_t0(),
            "t1": x.is_t1(),
            "warnings": x.warnings(),
        }),
        TopoOp::Lattice => {
            let l = open_lattice(x)?;
            json!({
                "elements": l.elements.len(),
                "poset": PosetSpec::from_poset(&l.poset),
                "join_irreducibles": downsets(&l.poset, &l.poset.join_irreducibles()),
            })
        }
        TopoOp::Morphism => {
            let y = spaces.get(1).unwrap_or(x);
            let pairs: HashMap<String, String> =
                read::<MapSpec>(required(&ctx.inputs.map, "--map")?)?
                    .map
                    .into_iter()
                    .collect();
            let f = ContinuousMap::from_label_map(x, y, &pairs)?;
            let m = induced_morphism(&f)?;
            let point_map: serde_json::Map<String, Value> = m
                .point_map()
                .iter()
                .enumerate()
                .map(|(q, &g)| (m.target().label(q).to_string(), json!(m.source().label(g))))
                .collect();
            let mut out = json!({"continuous": true, "morphism": {"map": point_map}});
            if spaces.len() == 1 {
                out["automorphism"] = json!(induced_automorphism(&f).is_ok());
            }
            out
        }
    })
}

fn render(v: &Value, format: Format) -> String {
    match (format, v) {
        (Format::Table, Value::Object(map)) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            map.iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k:width$}  {s}"),
                    other => format!("{k:width$}  {other}"),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        _ => serde_json::to_string_pretty(v).expect("values serialize"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let (v, code) = Failure::Usage(e.to_string().trim_end().to_string()).report();
            println!("{}", render(&v, Format::Json));
            return ExitCode::from(code);
        }
    };
    let format = cli.inputs.format;
    let ctx = Ctx { inputs: cli.inputs };
    let result = match cli.command {
        Command::PosetCheck => poset_check(&ctx),
        Command::LatticeInfo => lattice_info(&ctx),
        Command::Cover { op } => cover_op(&ctx, op),
        Command::Expansive => expansive(&ctx),
        Command::PositivelyExpansive => positively_expansive(&ctx),
        Command::Dim => dim(&ctx),
        Command::ManeCert => mane_cert(&ctx),
        Command::Utz => utz(&ctx),
        Command::Entropy => entropy(&ctx),
        Command::ShiftEntropy => shift_entropy_cmd(&ctx),
        Command::ShiftExpansive => shift_expansive(&ctx),
        Command::Topo { op } => topo(&ctx, op),
    };
    match result {
        Ok(v) => {
            println!("{}", render(&v, format));
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (v, code) = f.report();
            println!("{}", render(&v, format));
            ExitCode::from(code)
        }
    }
}

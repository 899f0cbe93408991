use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use upg_core::embedder::embed_with;
use upg_core::host::{build_host, build_host_lazy};
use upg_core::mesh::{build_mesh, cycle_names, route_linkage, verify_linkage};
use upg_core::planar::find_planar_rotation;
use upg_core::verify::verify_topological_embedding;
use upg_core::wedge::{
    crossing_from_chord, crossing_from_diagonals, pairwise_adjacent_paths, route_involution, route_permutation,
    verify_routing, w, AugmentedStrip, Part, TripleWedge, TwVertex, WPath, WVertex, WedgeStrip, ZBypass,
};
use upg_core::{Graph, PlanarMap};

use crate::check::check;
use crate::config::Config;
use crate::dot::export_dot;
use crate::format::{Document, Named, PathRecord};

#[derive(Debug, Parser)]
#[command(name = "upg", version, about = "Planar routing gadgets and a universal planar host graph")]
pub struct Cli {
    /// key=value configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Outputs {
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// DOT export
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Host graphs
    #[command(subcommand)]
    Host(HostCmd),
    /// Embed a planar guest into a host graph
    Embed {
        #[arg(long)]
        graph: PathBuf,
        /// Rotation records; searched for when absent (small guests only)
        #[arg(long)]
        rotation: Option<PathBuf>,
        /// Run the goodness checks after every step
        #[arg(long)]
        check: bool,
        /// Leave the host graph records out of the output
        #[arg(long)]
        no_host: bool,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Re-check a serialized object; exit status 0 iff nothing is wrong
    Verify {
        input: PathBuf,
        /// Guest graph of an embedding
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Host graph, when the input does not carry one
        #[arg(long)]
        host: Option<PathBuf>,
    },
    /// Routing in wedge strips and triple wedges
    #[command(subcommand)]
    Wedge(WedgeCmd),
    /// Meshes and their linkages
    #[command(subcommand)]
    Mesh(MeshCmd),
    /// DOT export of any serialized object
    Dot {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed a small fixed corpus and report levels, sizes and timings
    Demo {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum HostCmd {
    /// Build the host of a given level with its registry
    Build {
        #[arg(long)]
        level: usize,
        /// Only the base cycle; blocks are glued on demand by the embedder
        #[arg(long)]
        lazy: bool,
        #[command(flatten)]
        outputs: Outputs,
    },
}

#[derive(Debug, Subcommand)]
pub enum WedgeCmd {
    /// Route w(m,i) to w(n,perm(i)) for a permutation of 0..=k
    Permute {
        #[arg(long)]
        k: usize,
        /// Comma separated images of 0..=k
        #[arg(long)]
        perm: String,
        /// Start layer (default k+1)
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Join w(m,i) and w(m,phi(i)) for a fixed-point-free involution of 0..=k
    Involution {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Branch sets of a complete minor of order p
    Minor {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Two crossing bypasses from a chord between layers m and n
    Chord {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Enclosed end, e.g. x5.2
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Layers of the triple wedge (default n)
        #[arg(long)]
        layers: Option<usize>,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Two crossing bypasses from both diagonals of layer k
    Diagonals {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        layers: Option<usize>,
        #[command(flatten)]
        outputs: Outputs,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeshCmd {
    /// An (m, n)-mesh with its c1/c2 headers
    Build {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Disjoint paths from each --from vertex to the matching --to vertex
    Link {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Comma separated names, e.g. a0,a1
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        outputs: Outputs,
    },
}

/// Result of a run: anything printed for the user and the number of
/// violations found, which decides the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub violations: usize,
}

fn read_doc(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Document::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_text(cfg: &Config, path: &Path, text: &str) -> Result<()> {
    let path = cfg.output_path(path);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes `doc` to `--out` (or into the outcome) and its DOT export to `--dot`.
fn emit(cfg: &Config, outputs: &Outputs, doc: &Document, outcome: &mut Outcome) -> Result<()> {
    let text = doc.serialize();
    match &outputs.out {
        Some(p) => write_text(cfg, p, &text)?,
        None => outcome.stdout.push_str(&text),
    }
    if let Some(p) = &outputs.dot {
        write_text(cfg, p, &export_dot(doc))?;
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|x| x.trim().parse().with_context(|| format!("bad entry {x:?} in {s:?}"))).collect()
}

fn parse_names(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn tw_vertex(s: &str) -> Result<TwVertex> {
    let mut chars = s.chars();
    let part = match chars.next() {
        Some('x') => Part::X,
        Some('y') => Part::Y,
        Some('z') => Part::Z,
        _ => bail!("triple wedge vertex {s:?} must start with x, y or z"),
    };
    let (layer, index) =
        chars.as_str().split_once('.').ok_or_else(|| anyhow!("expected <part><layer>.<index>, got {s:?}"))?;
    Ok(TwVertex::new(part, layer.parse()?, index.parse()?))
}

/// The strip graph with one `path` record per routed path, named by its
/// expected ends.
fn strip_doc(aug: &AugmentedStrip, paths: &[WPath], ends: &[(WVertex, WVertex)]) -> Document {
    let (g, ix) = aug.graph();
    let name = |v: &WVertex| g.name(ix[v]).to_string();
    let mut doc = Document::from_graph(&g);
    for (p, (s, t)) in paths.iter().zip(ends) {
        doc.paths.push(PathRecord { from: name(s), to: name(t), ids: p.iter().map(name).collect() });
    }
    doc
}

fn triple_doc(tw: &TripleWedge, chord: Option<(TwVertex, TwVertex)>, bypasses: [&ZBypass; 2]) -> Document {
    let (g, _) = tw.graph();
    let mut doc = Document::from_graph(&g);
    if let Some((u, v)) = chord {
        doc.edges.push((u.name(), v.name()));
    }
    for b in bypasses {
        let ids: Vec<String> = b.path.iter().map(TwVertex::name).collect();
        doc.paths.push(PathRecord { from: ids[0].clone(), to: ids[ids.len() - 1].clone(), ids });
    }
    doc
}

fn note(outcome: &mut Outcome, problems: Vec<String>) {
    for p in &problems {
        eprintln!("violation: {p}");
    }
    outcome.violations += problems.len();
}

fn host_build(cfg: &Config, level: usize, lazy: bool, outputs: &Outputs) -> Result<Outcome> {
    let host = if lazy { build_host_lazy(level)? } else { build_host(level)? };
    let mut doc = Document::from_map(&host.map);
    doc.level = Some(level);
    for k in 1..=level {
        for (id, walk) in host.attachment_cycles(k)? {
            let ids = walk.vertices.iter().map(|&v| host.address(v).to_string()).collect();
            doc.cycles.push(Named { name: id.to_string(), ids });
        }
    }
    eprintln!("host level {level}: {} vertices, {} edges", host.graph().len(), host.graph().edge_count());
    let mut outcome = Outcome::default();
    emit(cfg, outputs, &doc, &mut outcome)?;
    Ok(outcome)
}

fn guest_map(cfg: &Config, graph: &Path, rotation: Option<&Path>) -> Result<PlanarMap> {
    let mut doc = read_doc(graph)?;
    if let Some(r) = rotation {
        doc = doc.with_rotation(&read_doc(r)?);
    }
    if !doc.rotation.is_empty() {
        return Ok(doc.planar_map()?);
    }
    let g = doc.graph()?;
    if g.len() > 10 {
        bail!("{} has no rotation records and too many vertices for a search", graph.display());
    }
    find_planar_rotation(&g, cfg.rotation_limit).ok_or_else(|| anyhow!("no planar rotation system found"))
}

fn embed(
    cfg: &Config,
    graph: &Path,
    rotation: Option<&Path>,
    check: bool,
    no_host: bool,
    outputs: &Outputs,
) -> Result<Outcome> {
    let guest = guest_map(cfg, graph, rotation)?;
    let res = embed_with(&guest, check || cfg.check)?;
    let host = res.host_map()?;
    let emb = res.embedding();
    let mut outcome = Outcome::default();
    let problems = verify_topological_embedding(&guest.graph, &host.graph, &emb);
    note(&mut outcome, problems.iter().map(|v| format!("{v:?}")).collect());
    let level = res.levels().into_iter().max().unwrap_or(1);
    let mut overlay = Document::default();
    overlay.add_embedding(&guest.graph, &host.graph, &emb);
    let mut doc = if no_host { Document::default() } else { Document::from_graph(&host.graph) };
    doc.level = Some(level);
    doc.map = overlay.map.clone();
    doc.paths = overlay.paths.clone();
    eprintln!(
        "embedded {} vertices and {} edges; level {level}, {} host vertices",
        guest.graph.len(),
        guest.graph.edge_count(),
        host.graph.len()
    );
    let plain = Outputs { out: outputs.out.clone(), dot: None };
    emit(cfg, &plain, &doc, &mut outcome)?;
    if let Some(p) = &outputs.dot {
        write_text(cfg, p, &export_dot(&overlay))?;
    }
    Ok(outcome)
}

fn verify(input: &Path, graph: Option<&Path>, host: Option<&Path>) -> Result<Outcome> {
    let doc = read_doc(input)?;
    let guest = graph.map(read_doc).transpose()?;
    let host = host.map(read_doc).transpose()?;
    let report = check(&doc, guest.as_ref(), host.as_ref())?;
    let mut outcome = Outcome::default();
    if report.ok() {
        outcome.stdout = format!("{}: ok\n", report.kind);
    } else {
        outcome.stdout = format!("{}: {} violation(s)\n", report.kind, report.problems.len());
        for p in &report.problems {
            outcome.stdout.push_str(&format!("  {p}\n"));
        }
    }
    outcome.violations = report.problems.len();
    Ok(outcome)
}

fn wedge(cfg: &Config, cmd: &WedgeCmd) -> Result<Outcome> {
    let mut outcome = Outcome::default();
    let (doc, outputs) = match cmd {
        WedgeCmd::Permute { k, perm, m, outputs } => {
            let pi = parse_list(perm)?;
            if pi.len() != k + 1 {
                bail!("--perm lists {} images, expected {}", pi.len(), k + 1);
            }
            let m = m.unwrap_or(k + 1);
            let aug = AugmentedStrip::bare(WedgeStrip::new(m, m + 1)?);
            let r = route_permutation(&aug, m, *k, &pi)?;
            let ends: Vec<_> = pi.iter().enumerate().map(|(i, &j)| (w(m, i), w(r.n, j))).collect();
            let problems = verify_routing(&r.aug, &r.paths, &ends, &[m, r.n]);
            note(&mut outcome, problems.iter().map(|v| format!("{v:?}")).collect());
            (strip_doc(&r.aug, &r.paths, &ends), outputs)
        }
        WedgeCmd::Involution { k, phi, m, outputs } => {
            let phi = parse_list(phi)?;
            if phi.len() != k + 1 {
                bail!("--phi lists {} images, expected {}", phi.len(), k + 1);
            }
            let m = m.unwrap_or(k + 1);
            let aug = AugmentedStrip::bare(WedgeStrip::new(m, m + 1)?);
            let r = route_involution(&aug, m, *k, &phi)?;
            let ends: Vec<_> = (0..=*k).filter(|&i| i < phi[i]).map(|i| (w(m, i), w(m, phi[i]))).collect();
            let problems = verify_routing(&r.aug, &r.paths, &ends, &[m]);
            note(&mut outcome, problems.iter().map(|v| format!("{v:?}")).collect());
            (strip_doc(&r.aug, &r.paths, &ends), outputs)
        }
        WedgeCmd::Minor { p, m, outputs } => {
            let aug = AugmentedStrip::bare(WedgeStrip::new(*m, m + 1)?);
            let fam = pairwise_adjacent_paths(&aug, *p)?;
            let (g, ix) = fam.aug.graph();
            let mut doc = Document::from_graph(&g);
            for (i, path) in fam.paths.iter().enumerate() {
                let ids = path.iter().map(|v| g.name(ix[v]).to_string()).collect();
                doc.branches.push(Named { name: format!("b{i}"), ids });
            }
            let report = check(&doc, None, None)?;
            note(&mut outcome, report.problems);
            (doc, outputs)
        }
        WedgeCmd::Chord { m, n, u, v, layers, outputs } => {
            let (u, v) = (tw_vertex(u)?, tw_vertex(v)?);
            let tw = TripleWedge::new(layers.unwrap_or(*n));
            let (p, q) = crossing_from_chord(&tw, *m, *n, u, v)?;
            if !p.crosses(&q) {
                note(&mut outcome, vec!["bypasses do not cross".to_string()]);
            }
            let doc = triple_doc(&tw, Some((u, v)), [&p, &q]);
            note(&mut outcome, check(&doc, None, None)?.problems);
            (doc, outputs)
        }
        WedgeCmd::Diagonals { k, layers, outputs } => {
            let mut tw = TripleWedge::new(layers.unwrap_or(k + 3));
            tw.add_diagonal(*k, false)?;
            tw.add_diagonal(*k, true)?;
            let (p, q) = crossing_from_diagonals(&tw, *k)?;
            if !p.crosses(&q) {
                note(&mut outcome, vec!["bypasses do not cross".to_string()]);
            }
            let doc = triple_doc(&tw, None, [&p, &q]);
            note(&mut outcome, check(&doc, None, None)?.problems);
            (doc, outputs)
        }
    };
    emit(cfg, outputs, &doc, &mut outcome)?;
    Ok(outcome)
}

fn mesh(cfg: &Config, cmd: &MeshCmd) -> Result<Outcome> {
    let mut outcome = Outcome::default();
    let (m, n, outputs) = match cmd {
        MeshCmd::Build { m, n, outputs } | MeshCmd::Link { m, n, outputs, .. } => (*m, *n, outputs),
    };
    let mesh = build_mesh(m, n)?;
    let mut doc = Document::from_map(&mesh.map);
    let (c1, c2) = cycle_names(&mesh);
    doc.cycles.push(Named { name: "c1".to_string(), ids: c1 });
    doc.cycles.push(Named { name: "c2".to_string(), ids: c2 });
    if let MeshCmd::Link { from, to, .. } = cmd {
        let (from, to) = (parse_names(from), parse_names(to));
        if from.len() != to.len() {
            bail!("--from names {} vertices, --to names {}", from.len(), to.len());
        }
        let g = mesh.graph();
        let find = |s: &String| g.find(s).ok_or_else(|| anyhow!("no mesh vertex {s}"));
        let phi = from.iter().zip(&to).map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
        let linkage = route_linkage(&mesh, &phi)?;
        note(&mut outcome, verify_linkage(&mesh, &phi, &linkage).iter().map(|v| format!("{v:?}")).collect());
        for ((a, b), p) in from.into_iter().zip(to).zip(&linkage.paths) {
            doc.paths.push(PathRecord { from: a, to: b, ids: p.iter().map(|&x| g.name(x).to_string()).collect() });
        }
    }
    emit(cfg, outputs, &doc, &mut outcome)?;
    Ok(outcome)
}

fn numbered_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::with_capacity(n);
    for i in 0..n {
        g.add_vertex(i.to_string()).expect("fresh names");
    }
    for &(u, v) in edges {
        g.add_edge(u, v).expect("simple edge list");
    }
    g
}

/// Small guests for the demo, as edge lists on `0..n`.
pub fn demo_corpus() -> Vec<(&'static str, Graph)> {
    let cycle = |n: usize| (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>();
    let mut grid = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            if c < 2 {
                grid.push((3 * r + c, 3 * r + c + 1));
            }
            if r < 2 {
                grid.push((3 * r + c, 3 * r + c + 3));
            }
        }
    }
    let mut cube = cycle(4);
    cube.extend(cycle(4).into_iter().map(|(u, v)| (u + 4, v + 4)));
    cube.extend((0..4).map(|i| (i, i + 4)));
    vec![
        ("path6", numbered_graph(6, &(0..5).map(|i| (i, i + 1)).collect::<Vec<_>>())),
        ("cycle6", numbered_graph(6, &cycle(6))),
        ("star5", numbered_graph(6, &(1..6).map(|i| (0, i)).collect::<Vec<_>>())),
        ("k4", numbered_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])),
        ("cube", numbered_graph(8, &cube)),
        ("grid3x3", numbered_graph(9, &grid)),
        ("two-triangles", numbered_graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])),
    ]
}

fn demo(cfg: &Config, out: Option<&Path>) -> Result<Outcome> {
    let mut outcome = Outcome::default();
    let mut table = String::from("# guest vertices edges level host-vertices ms violations\n");
    for (name, g) in demo_corpus() {
        let guest =
            find_planar_rotation(&g, cfg.rotation_limit).ok_or_else(|| anyhow!("{name}: no planar rotation"))?;
        let start = Instant::now();
        let res = embed_with(&guest, cfg.check)?;
        let ms = start.elapsed().as_millis();
        let host = res.host_map()?;
        let bad = verify_topological_embedding(&guest.graph, &host.graph, &res.embedding()).len();
        let level = res.levels().into_iter().max().unwrap_or(1);
        table.push_str(&format!("{name} {} {} {level} {} {ms} {bad}\n", g.len(), g.edge_count(), host.graph.len()));
        outcome.violations += bad;
    }
    match out {
        Some(p) => write_text(cfg, p, &table)?,
        None => outcome.stdout = table,
    }
    Ok(outcome)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = Config::load(cli.config.as_deref())?;
    match &cli.verb {
        Verb::Host(HostCmd::Build { level, lazy, outputs }) => host_build(&cfg, *level, *lazy, outputs),
        Verb::Embed { graph, rotation, check, no_host, outputs } => {
            embed(&cfg, graph, rotation.as_deref(), *check, *no_host, outputs)
        }
        Verb::Verify { input, graph, host } => verify(input, graph.as_deref(), host.as_deref()),
        Verb::Wedge(cmd) => wedge(&cfg, cmd),
        Verb::Mesh(cmd) => mesh(&cfg, cmd),
        Verb::Dot { input, out } => {
            let text = export_dot(&read_doc(input)?);
            let mut outcome = Outcome::default();
            match out {
                Some(p) => write_text(&cfg, p, &text)?,
                None => outcome.stdout = text,
            }
            Ok(outcome)
        }
        Verb::Demo { out } => demo(&cfg, out.as_deref()),
    }
}

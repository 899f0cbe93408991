use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;
use upg::format::Document;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn upg_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_upg"));
    cmd.current_dir(dir).args(args).env_remove("UPG_OUT_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn upg(dir: &Path, args: &[&str]) -> Run {
    upg_in(dir, args, &[])
}

fn triangle(dir: &Path) {
    fs::write(dir.join("tri.txt"), "v a\nv b\nv c\ne a b\ne b c\ne c a\n").unwrap();
    fs::write(dir.join("tri.rot"), "r a: b,c\nr b: c,a\nr c: a,b\n").unwrap();
}

fn read(dir: &Path, f: &str) -> Document {
    Document::parse(&fs::read_to_string(dir.join(f)).unwrap()).unwrap()
}

#[test]
fn host_build_writes_the_registry() {
    let t = TempDir::new().unwrap();
    let r = upg(t.path(), &["host", "build", "--level", "2", "--out", "g2.txt"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = read(t.path(), "g2.txt");
    assert_eq!(doc.level, Some(2));
    assert_eq!(doc.vertices.len(), 157);
    let names: Vec<&str> = doc.cycles.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["c1.0", "c2.0", "c2.1"]);
    assert!(doc.cycles[1..].iter().all(|c| c.ids.len() == 6));
    let v = upg(t.path(), &["verify", "g2.txt"]);
    assert_eq!((v.code, v.stdout.as_str()), (0, "graph: ok\n"));
}

#[test]
fn broken_registry_cycle_is_reported() {
    let t = TempDir::new().unwrap();
    assert_eq!(upg(t.path(), &["host", "build", "--level", "2", "--out", "g2.txt"]).code, 0);
    let mut doc = read(t.path(), "g2.txt");
    doc.cycles[2].ids.swap(0, 2);
    fs::write(t.path().join("bad.txt"), doc.serialize()).unwrap();
    let v = upg(t.path(), &["verify", "bad.txt"]);
    assert_eq!(v.code, 1);
    assert!(v.stdout.contains("cycle c2.1"), "{}", v.stdout);
}

#[test]
fn permutation_routing_round_trip() {
    let t = TempDir::new().unwrap();
    let r = upg(t.path(), &["wedge", "permute", "--k", "3", "--perm", "2,0,1,3", "--out", "paths.txt"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = read(t.path(), "paths.txt");
    assert_eq!(doc.paths.len(), 4);
    let ends: Vec<(&str, &str)> = doc.paths.iter().map(|p| (p.from.as_str(), p.to.as_str())).collect();
    let n = doc.paths[0].to.trim_start_matches('w').split('.').next().unwrap().to_string();
    let want: Vec<(String, String)> =
        [2, 0, 1, 3].iter().enumerate().map(|(i, j)| (format!("w4.{i}"), format!("w{n}.{j}"))).collect();
    assert_eq!(ends, want.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect::<Vec<_>>());
    let v = upg(t.path(), &["verify", "paths.txt"]);
    assert_eq!((v.code, v.stdout.as_str()), (0, "path family: ok\n"));
}

#[test]
fn tampered_paths_fail_verification() {
    let t = TempDir::new().unwrap();
    assert_eq!(upg(t.path(), &["wedge", "permute", "--k", "2", "--perm", "1,2,0", "--out", "p.txt"]).code, 0);
    let mut doc = read(t.path(), "p.txt");
    let stolen = doc.paths[0].ids[2].clone();
    doc.paths[1].ids.insert(1, stolen);
    fs::write(t.path().join("bad.txt"), doc.serialize()).unwrap();
    let v = upg(t.path(), &["verify", "bad.txt"]);
    assert_eq!(v.code, 1);
    assert!(v.stdout.starts_with("path family: "), "{}", v.stdout);
    let mut doc = read(t.path(), "p.txt");
    doc.paths[0].to = doc.paths[1].to.clone();
    fs::write(t.path().join("ends.txt"), doc.serialize()).unwrap();
    assert_eq!(upg(t.path(), &["verify", "ends.txt"]).code, 1);
}

#[test]
fn embedding_round_trip() {
    let t = TempDir::new().unwrap();
    triangle(t.path());
    let r = upg(
        t.path(),
        &["embed", "--graph", "tri.txt", "--rotation", "tri.rot", "--out", "emb.txt", "--dot", "emb.dot"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = read(t.path(), "emb.txt");
    assert_eq!(doc.map.len(), 3);
    assert_eq!(doc.paths.len(), 3);
    for args in [&["verify", "emb.txt", "--graph", "tri.txt"][..], &["verify", "emb.txt"][..]] {
        let v = upg(t.path(), args);
        assert_eq!((v.code, v.stdout.as_str()), (0, "embedding: ok\n"), "{args:?}");
    }
    let bare =
        upg(t.path(), &["embed", "--graph", "tri.txt", "--rotation", "tri.rot", "--no-host", "--out", "bare.txt"]);
    assert_eq!(bare.code, 0);
    assert!(read(t.path(), "bare.txt").vertices.is_empty());
    let v = upg(t.path(), &["verify", "bare.txt", "--graph", "tri.txt", "--host", "emb.txt"]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    assert_eq!(upg(t.path(), &["verify", "bare.txt"]).code, 2);
}

#[test]
fn tampered_embeddings_fail_verification() {
    let t = TempDir::new().unwrap();
    triangle(t.path());
    assert_eq!(upg(t.path(), &["embed", "--graph", "tri.txt", "--rotation", "tri.rot", "--out", "emb.txt"]).code, 0);
    let good = read(t.path(), "emb.txt");

    let mut shared = good.clone();
    shared.map[1].1 = shared.map[0].1.clone();
    let mut cut = good.clone();
    let mid = cut.paths[0].ids.len() / 2;
    cut.paths[0].ids.remove(mid);
    let mut dropped = good.clone();
    dropped.paths.pop();
    let mut crossing = good.clone();
    let p1 = crossing.paths[1].ids.clone();
    crossing.paths[0].ids.insert(1, p1[1].clone());
    for (name, doc, needle) in
        [("shared", shared, "share an image"), ("cut", cut, "breaks at position"), ("crossing", crossing, "share")]
    {
        fs::write(t.path().join(name), doc.serialize()).unwrap();
        let v = upg(t.path(), &["verify", name, "--graph", "tri.txt"]);
        assert_eq!(v.code, 1, "{name}: {}", v.stdout);
        assert!(v.stdout.contains(needle), "{name}: {}", v.stdout);
    }
    fs::write(t.path().join("dropped"), dropped.serialize()).unwrap();
    let v = upg(t.path(), &["verify", "dropped", "--graph", "tri.txt"]);
    assert_eq!(v.code, 1);
    assert!(v.stdout.contains("no path for edge"), "{}", v.stdout);
}

#[test]
fn guests_without_rotation_are_searched() {
    let t = TempDir::new().unwrap();
    let edges: String = (0..4).flat_map(|i| ((i + 1)..4).map(move |j| format!("e {i} {j}\n"))).collect();
    fs::write(t.path().join("k4.txt"), format!("v 0\nv 1\nv 2\nv 3\n{edges}")).unwrap();
    let r = upg(t.path(), &["embed", "--graph", "k4.txt", "--check", "--out", "k4.emb"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(upg(t.path(), &["verify", "k4.emb", "--graph", "k4.txt"]).code, 0);
}

#[test]
fn bad_inputs_exit_with_status_two() {
    let t = TempDir::new().unwrap();
    triangle(t.path());
    fs::write(t.path().join("broken.txt"), "v a\nv b\ne a\n").unwrap();
    let r = upg(t.path(), &["verify", "broken.txt"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    let k4 = "r 0: 1,2,3\nr 1: 0,2,3\nr 2: 0,3,1\nr 3: 0,1,2\n";
    fs::write(t.path().join("k4.rot"), k4).unwrap();
    fs::write(t.path().join("k4.txt"), "v 0\nv 1\nv 2\nv 3\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
    let r = upg(t.path(), &["embed", "--graph", "k4.txt", "--rotation", "k4.rot"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    let r = upg(t.path(), &["wedge", "involution", "--k", "2", "--phi", "1,0,2"]);
    assert_eq!(r.code, 2);
    let r = upg(t.path(), &["wedge", "permute", "--k", "2", "--perm", "0,1"]);
    assert_eq!(r.code, 2);
    let r = upg(t.path(), &["mesh", "link", "--m", "4", "--n", "6", "--from", "a0,a1,a2", "--to", "b4,b2,b0"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert_eq!(upg(t.path(), &["frobnicate"]).code, 2);
}

#[test]
fn non_planar_rotation_is_reported_by_verify() {
    let t = TempDir::new().unwrap();
    fs::write(t.path().join("k4.txt"), "r 0: 1,2,3\nr 1: 0,2,3\nr 2: 0,3,1\nr 3: 0,1,2\n").unwrap();
    let doc = read(t.path(), "k4.txt");
    let mut full = Document::from_graph(&doc.planar_map().unwrap().graph);
    full.rotation = doc.rotation;
    fs::write(t.path().join("full.txt"), full.serialize()).unwrap();
    let v = upg(t.path(), &["verify", "full.txt"]);
    assert_eq!(v.code, 1);
    assert!(v.stdout.contains("not planar"));
}

#[test]
fn mesh_linkage_round_trip() {
    let t = TempDir::new().unwrap();
    let r = upg(
        t.path(),
        &["mesh", "link", "--m", "4", "--n", "6", "--from", "a0,a1,a2", "--to", "b0,b2,b4", "--out", "l.txt"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = read(t.path(), "l.txt");
    assert_eq!(doc.cycles.iter().map(|c| c.ids.len()).collect::<Vec<_>>(), [4, 6]);
    assert_eq!(doc.paths.len(), 3);
    assert_eq!(upg(t.path(), &["verify", "l.txt"]).code, 0);
    assert_eq!(upg(t.path(), &["mesh", "build", "--m", "3", "--n", "5", "--out", "m.txt"]).code, 0);
    assert_eq!(upg(t.path(), &["verify", "m.txt"]).stdout, "graph: ok\n");
}

#[test]
fn gadget_verbs_verify() {
    let t = TempDir::new().unwrap();
    let cases: [&[&str]; 4] = [
        &["wedge", "involution", "--k", "5", "--phi", "3,4,5,0,1,2", "--out", "x.txt"],
        &["wedge", "minor", "--p", "5", "--out", "x.txt"],
        &["wedge", "chord", "--m", "3", "--n", "8", "--u", "x5.2", "--v", "x7.4", "--out", "x.txt"],
        &["wedge", "diagonals", "--k", "3", "--out", "x.txt"],
    ];
    for args in cases {
        let r = upg(t.path(), args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        let v = upg(t.path(), &["verify", "x.txt"]);
        assert_eq!(v.code, 0, "{args:?}: {}", v.stdout);
    }
    assert_eq!(read(t.path(), "x.txt").paths.len(), 2);
}

#[test]
fn output_directory_from_environment_and_config() {
    let t = TempDir::new().unwrap();
    let env_dir = t.path().join("env");
    let r = upg_in(
        t.path(),
        &["mesh", "build", "--m", "3", "--n", "3", "--out", "m.txt"],
        &[("UPG_OUT_DIR", env_dir.to_str().unwrap())],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(env_dir.join("m.txt").exists());
    assert!(!t.path().join("m.txt").exists());

    let cfg_dir = t.path().join("cfg");
    fs::write(t.path().join("upg.conf"), format!("# outputs\nout_dir = {}\n", cfg_dir.display())).unwrap();
    let r = upg_in(
        t.path(),
        &["--config", "upg.conf", "mesh", "build", "--m", "3", "--n", "3", "--out", "m.txt"],
        &[("UPG_OUT_DIR", env_dir.to_str().unwrap())],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(cfg_dir.join("m.txt").exists());

    let abs = t.path().join("abs.txt");
    let r = upg_in(
        t.path(),
        &["mesh", "build", "--m", "3", "--n", "3", "--out", abs.to_str().unwrap()],
        &[("UPG_OUT_DIR", env_dir.to_str().unwrap())],
    );
    assert_eq!(r.code, 0);
    assert!(abs.exists());

    fs::write(t.path().join("bad.conf"), "colour = red\n").unwrap();
    assert_eq!(upg(t.path(), &["--config", "bad.conf", "demo"]).code, 2);
}

#[test]
fn demo_embeds_its_corpus() {
    let t = TempDir::new().unwrap();
    let r = upg(t.path(), &["demo"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows: Vec<&str> = r.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), upg::commands::demo_corpus().len());
    assert!(rows.iter().all(|l| l.ends_with(" 0")), "{}", r.stdout);
}

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use crclass_core::classify::DegenerateKind;
use crclass_core::classify::Verdict;
use crclass_core::{validate_manifold, GaussianRational, ManifoldSpec, ValidatedSpec};

pub const TUBE: &str = "(z1*zb1 + 1/2*z1^2*zb2 + 1/2*zb1^2*z2)/(1 - z2*zb2)";

pub struct Model {
    pub name: &'static str,
    pub n: usize,
    pub c: usize,
    pub phi: Vec<&'static str>,
    pub verdict: Verdict,
}

pub fn corpus() -> Vec<Model> {
    let m = |name, n, c, phi: &[&'static str], verdict| Model { name, n, c, phi: phi.to_vec(), verdict };
    vec![
        m("heisenberg", 1, 1, &["z*zb"], Verdict::ClassI),
        m("flat M3", 1, 1, &["0"], Verdict::LeviFlat),
        m("class II", 1, 2, &["z*zb", "z*zb*(z + zb)"], Verdict::ClassII),
        m("M3 x R", 1, 2, &["z*zb", "0"], Verdict::DegenerateProduct(DegenerateKind::M3xR)),
        m("flat M4", 1, 2, &["0", "0"], Verdict::LeviFlat),
        m("class III1", 1, 3, &["z*zb", "z^2*zb + z*zb^2", "-I*z^2*zb + I*z*zb^2"], Verdict::ClassIII1),
        m("class III2", 1, 3, &["z*zb", "z*zb*(z + zb)", "z*zb*(z^2 + 3/2*z*zb + zb^2)"], Verdict::ClassIII2),
        m("M4 x R", 1, 3, &["z*zb", "z*zb*(z + zb)", "0"], Verdict::DegenerateProduct(DegenerateKind::M4xR)),
        m("M3 x R2", 1, 3, &["z*zb", "0", "0"], Verdict::DegenerateProduct(DegenerateKind::M3xR2)),
        m("flat M5 (c=3)", 1, 3, &["0", "0", "0"], Verdict::LeviFlat),
        m("sphere", 2, 1, &["z1*zb1 + z2*zb2"], Verdict::ClassIV1),
        m("light-cone tube", 2, 1, &[TUBE], Verdict::ClassIV2),
        m("M3 x C", 2, 1, &["z1*zb1"], Verdict::DegenerateProduct(DegenerateKind::M3xC)),
        m("diagonal square", 2, 1, &["(z1 + z2)*(zb1 + zb2)"], Verdict::DegenerateProduct(DegenerateKind::M3xC)),
        m("flat M5 (n=2)", 2, 1, &["0"], Verdict::LeviFlat),
    ]
}

pub fn spec(n: usize, c: usize, phi: &[&str]) -> ValidatedSpec {
    validate_manifold(ManifoldSpec::parse(n, c, phi).unwrap()).unwrap()
}

pub fn model_spec(m: &Model) -> ValidatedSpec {
    spec(m.n, m.c, &m.phi)
}

fn rand_gr(rng: &mut StdRng, allow_imag: bool) -> GaussianRational {
    let re = rng.gen_range(-3i64..=3);
    let re_d = rng.gen_range(1i64..=3);
    let im = if allow_imag { rng.gen_range(-3i64..=3) } else { 0 };
    let im_d = rng.gen_range(1i64..=3);
    let g = GaussianRational::from_parts((re, re_d), (im, im_d));
    if g == GaussianRational::from_int(0) {
        GaussianRational::from_int(1)
    } else {
        g
    }
}

fn mono(vars: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A real polynomial of total degree at most 3 in `z1, z2, zb1, zb2, u1`,
/// built from a few random monomials plus their conjugates.
pub fn random_real_phi(rng: &mut StdRng) -> String {
    let vars = ["z1", "z2", "zb1", "zb2", "u1"];
    let nterms = rng.gen_range(2..=4);
    let mut out = Vec::new();
    for _ in 0..nterms {
        let deg = rng.gen_range(2..=3u32);
        let mut e = [0u32; 5];
        for _ in 0..deg {
            e[rng.gen_range(0..5)] += 1;
        }
        let conj_e = [e[2], e[3], e[0], e[1], e[4]];
        let c = rand_gr(rng, e != conj_e);
        if e == conj_e {
            out.push(format!("({c})*{}", mono(&vars, &e)));
        } else {
            out.push(format!("({c})*{}", mono(&vars, &e)));
            out.push(format!("({})*{}", c.conj(), mono(&vars, &conj_e)));
        }
    }
    out.join(" + ")
}

pub fn random_gr(rng: &mut StdRng) -> GaussianRational {
    rand_gr(rng, true)
}

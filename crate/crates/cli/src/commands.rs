use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rpd_core::format::{parse_complex, parse_tower, write_complex, write_tower};
use rpd_core::homology::{betti_gf2, homology_z, HomologyGroups};
use rpd_core::verify::{
    check_closed_pseudomanifold, check_vertex_links, fibonacci_rpd_f0, is_gf2_sphere,
    verify_certificate, Comparison,
};
use rpd_core::{check_cs, find_induced_cs_4cycle, kuhnel_rpd, tower, CsComplex};

use crate::{Check, Expect};

fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn build(dim: usize, out: &Path, tower_out: Option<&Path>, max_dim: usize) -> Result<ExitCode> {
    if dim > max_dim {
        bail!("--dim {dim} exceeds --max-dim {max_dim}");
    }
    let started = Instant::now();
    let t = tower::build(dim)?;
    let complex = rpd_core::quotient_rp(t.top())?;
    fs::write(out, write_complex(&complex, false))
        .with_context(|| format!("writing {}", out.display()))?;
    if let Some(path) = tower_out {
        fs::write(path, write_tower(&t)).with_context(|| format!("writing {}", path.display()))?;
    }
    let f = complex.f_vector();
    let formula = fibonacci_rpd_f0(dim);
    println!("f={f}");
    println!(
        "f0_formula={formula} {}",
        if formula == f.0[0] as u64 {
            "match"
        } else {
            "MISMATCH"
        }
    );
    let contractions: usize = t.log().iter().map(|s| s.contractions).sum();
    let checked: usize = t.log().iter().map(|s| s.link_checks_passed).sum();
    println!("contractions={contractions} link_checks_passed={checked}");
    println!("elapsed_ms={}", started.elapsed().as_millis());
    Ok(if formula == f.0[0] as u64 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn kuhnel(dim: usize, out: &Path) -> Result<ExitCode> {
    if dim == 0 {
        bail!("--dim must be at least 1");
    }
    let k = kuhnel_rpd(dim)?;
    fs::write(out, write_complex(&k, false))
        .with_context(|| format!("writing {}", out.display()))?;
    println!("f={}", k.f_vector());
    Ok(ExitCode::SUCCESS)
}

pub fn compare(dim: usize) -> Result<ExitCode> {
    let c = Comparison::new(dim);
    println!("{c}");
    match c.holds() {
        Some(true) => println!("bound <= ours < kuhnel: holds"),
        Some(false) => {
            println!("bound <= ours < kuhnel: FAILS");
            return Ok(ExitCode::from(1));
        }
        None => {}
    }
    Ok(ExitCode::SUCCESS)
}

struct Summary {
    failed: bool,
}

impl Summary {
    fn report(&mut self, name: &str, ok: bool, detail: Option<String>) {
        println!("check.{name}={}", if ok { "pass" } else { "fail" });
        if let Some(d) = detail.filter(|_| !ok) {
            eprintln!("{name}: {d}");
        }
        self.failed |= !ok;
    }
}

fn default_checks(antipodal: bool, dim: usize, zmax: usize) -> Vec<Check> {
    let mut out = Vec::new();
    if antipodal {
        out.extend([Check::Cs, Check::FourCycle]);
    }
    out.extend([Check::Pm, Check::Links, Check::Hgf2]);
    if dim <= zmax {
        out.push(Check::Hz);
    }
    out
}

pub fn verify(
    path: &Path,
    checks: Option<&[Check]>,
    zmax: usize,
    expect: Option<Expect>,
) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let is_tower = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("scx-tower"));
    println!("file={}", path.display());
    if is_tower {
        return verify_tower(&text, checks);
    }
    let file = parse_complex(&text)?;
    let complex = file.complex;
    let dim = complex.dim().max(0) as usize;
    let expect = expect.unwrap_or(if file.antipodal {
        Expect::Sphere
    } else {
        Expect::Rp
    });
    println!("kind=complex");
    println!("dim={}", complex.dim());
    println!("f_vector={}", complex.f_vector());
    println!("euler={}", complex.euler_characteristic());
    let checks = checks.map_or_else(
        || default_checks(file.antipodal, dim, zmax),
        <[Check]>::to_vec,
    );
    let mut s = Summary { failed: false };
    for check in checks {
        match check {
            Check::Cs => {
                let r = check_cs(&complex);
                s.report("cs", r.is_ok(), r.err().map(|v| v.to_string()));
            }
            Check::FourCycle => match CsComplex::new(complex.clone()) {
                Ok(cs) => {
                    let w = find_induced_cs_4cycle(&cs);
                    s.report(
                        "4cycle",
                        w.is_none(),
                        w.map(|v| format!("vertex {v} lies on an induced cs 4-cycle")),
                    );
                }
                Err(e) => s.report("4cycle", false, Some(e.to_string())),
            },
            Check::Pm => {
                let r = check_closed_pseudomanifold(&complex);
                s.report("pm", r.passed(), Some(r.violations.join("; ")));
            }
            Check::Links => {
                let r = check_vertex_links(&complex, dim, false);
                s.report("links", r.passed(), Some(r.violations.join("; ")));
            }
            Check::Hgf2 => {
                let b = betti_gf2(&complex);
                println!("betti_gf2={}", tuple(&b));
                let ok = match expect {
                    Expect::Sphere => is_gf2_sphere(&b, dim),
                    Expect::Rp => b.iter().all(|&x| x == 1) && b.len() == dim + 1,
                    Expect::None => true,
                };
                s.report(
                    "hgf2",
                    ok,
                    Some(format!("unexpected GF(2) Betti numbers {}", tuple(&b))),
                );
            }
            Check::Hz => match homology_z(&complex, zmax) {
                Ok(h) => {
                    println!("homology_z={h}");
                    let ok = match expect {
                        Expect::Sphere => h == HomologyGroups::sphere(dim),
                        Expect::Rp => h == HomologyGroups::real_projective(dim),
                        Expect::None => true,
                    };
                    s.report("hz", ok, Some(format!("unexpected integral homology {h}")));
                }
                Err(e) => s.report("hz", false, Some(e.to_string())),
            },
            Check::Cert => s.report("cert", false, Some("cert needs a tower file".into())),
        }
    }
    Ok(finish(s))
}

fn verify_tower(text: &str, checks: Option<&[Check]>) -> Result<ExitCode> {
    let t = parse_tower(text)?;
    println!("kind=tower");
    println!("levels={}", t.levels().len());
    println!("f_vector={}", t.top().f_vector());
    let checks = checks.map_or_else(
        || vec![Check::Cert, Check::FourCycle, Check::Pm],
        <[Check]>::to_vec,
    );
    let mut s = Summary { failed: false };
    for check in checks {
        match check {
            Check::Cert => {
                let r = verify_certificate(&t);
                let detail: Vec<String> = r
                    .failures()
                    .map(|(i, c)| format!("level {i} {c}"))
                    .collect();
                s.report("cert", r.passed(), Some(detail.join("; ")));
            }
            Check::FourCycle => {
                let w = t
                    .levels()
                    .iter()
                    .find_map(|l| find_induced_cs_4cycle(&l.sphere));
                s.report("4cycle", w.is_none(), w.map(|v| format!("vertex {v}")));
            }
            Check::Pm => {
                let bad: Vec<usize> = (0..t.levels().len())
                    .filter(|&i| !check_closed_pseudomanifold(t.level(i).sphere.complex()).passed())
                    .collect();
                s.report("pm", bad.is_empty(), Some(format!("levels {bad:?}")));
            }
            other => bail!("check {other:?} is not supported on tower files"),
        }
    }
    Ok(finish(s))
}

fn finish(s: Summary) -> ExitCode {
    println!("result={}", if s.failed { "fail" } else { "pass" });
    if s.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

//! Compiles and runs a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "heckeforge.h"

int main(void) {
    HfRootDatum *d = NULL;
    if (hf_root_datum_new("GL3", &d) != HF_STATUS_OK) return 1;
    int64_t lam[3] = {1, 0, 0};
    int64_t coeffs[8];
    size_t n = 0;
    if (hf_orbit_count(d, lam, 3, coeffs, 8, &n) != HF_STATUS_OK) return 2;
    hf_root_datum_free(d);
    if (n != 3 || coeffs[0] != 1 || coeffs[1] != 1 || coeffs[2] != 1) return 3;

    HfFactored *f = NULL, *g = NULL;
    if (hf_factored_parse("x", 5, &f) != HF_STATUS_OK) return 4;
    if (hf_factored_parse("x + t", 5, &g) != HF_STATUS_OK) return 5;
    int64_t total = -1;
    if (hf_parshin_total(f, g, &total) != HF_STATUS_OK || total != 0) return 6;
    int64_t lhs, rhs;
    bool ok;
    if (hf_lemma_exten(f, g, &lhs, &rhs, &ok) != HF_STATUS_DOMAIN) return 7;
    char msg[128];
    hf_last_error(msg, sizeof msg);
    hf_factored_free(f);
    hf_factored_free(g);
    printf("ok %s\n", strlen(msg) > 0 ? "error-text" : "no-text");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests live in target/<profile>/deps; the static library sits one level up
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libheckeforge_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "C program exit");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok error-text\n");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}

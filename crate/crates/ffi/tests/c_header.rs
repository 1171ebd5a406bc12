//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on the PATH.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "filtered_nakayama.h"

int main(void) {
    const char *text = "generators: x1, x2\n"
                       "relation: x1^2*x2 - x1*x2*x1 - 2*x2*x1^2 - x1\n"
                       "relation: x1*x2^2 - x2*x1*x2 - 2*x2^2*x1 - x2\n"
                       "graded_nakayama: [-2,0;0,-1/2]\n";
    FnkPresentation *p = NULL;
    if (fnk_presentation_parse(text, &p) != FNK_STATUS_OK) return 10;
    FnkLift *l = NULL;
    if (fnk_lift_nakayama(p, NULL, fnk_presentation_default_bound(p), &l) != FNK_STATUS_OK) return 11;
    char *s = NULL;
    if (fnk_lift_render(l, p, &s) != FNK_STATUS_OK) return 12;
    printf("%s\n", s);
    fnk_string_free(s);
    fnk_lift_free(l);
    fnk_presentation_free(p);
    if (fnk_presentation_parse("generators: x1\nrelation: y\n", &p) != FNK_STATUS_PARSE_ERROR) return 13;
    printf("error: %s\n", fnk_last_error());
    return 0;
}
"#;

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in <target>/<profile>
    let target = tmp.parent().unwrap();
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libfiltered_nakayama_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let src = tmp.join("fnk_smoke.c");
    let exe = tmp.join("fnk_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("x1 -> -2*x1\nx2 -> -1/2*x2\n"), "{stdout}");
    assert!(stdout.contains("error: 2:"), "{stdout}");
}

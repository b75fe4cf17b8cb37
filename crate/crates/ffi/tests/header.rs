use std::path::PathBuf;
use std::process::Command;

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/iwasawa.h")
}

#[test]
fn header_declares_the_abi() {
    let text = std::fs::read_to_string(header()).expect("build script writes the header");
    for decl in [
        "typedef struct IwSeries IwSeries;",
        "typedef struct IwWeierstrass IwWeierstrass;",
        "IW_STATUS_OK = 0",
        "IW_STATUS_NO_FIT",
        "const char *iw_last_error(void);",
        "enum IwStatus iw_weierstrass_prep(const struct IwSeries *s, struct IwWeierstrass **out);",
        "void iw_string_free(char *s);",
    ] {
        assert!(text.contains(decl), "missing {decl:?}");
    }
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"iwasawa.h\"\n\
         int use(void) {\n\
           IwSeries *s = 0;\n\
           IwDim d;\n\
           if (iw_series_parse(3, 8, 32, \"T\", &s) != IW_STATUS_OK) return 1;\n\
           enum IwStatus st = iw_dim_ialpha(s, 1, 1, &d);\n\
           iw_series_free(s);\n\
           return st == IW_STATUS_OK && d.branch != IW_BRANCH_NONE ? 0 : 2;\n\
         }\n",
    )
    .unwrap();
    let include = header().parent().unwrap().to_path_buf();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "{cc} rejected the header"),
        Err(e) => eprintln!("skipping: no C compiler ({cc}: {e})"),
    }
}

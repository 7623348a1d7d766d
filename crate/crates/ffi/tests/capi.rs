use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use agc_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    agc_string_free(s);
    owned
}

unsafe fn last_error() -> String {
    let p = agc_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

unsafe fn algebra(atoms: &str) -> *mut AgcAlgebra {
    let mut alg = ptr::null_mut();
    assert_eq!(agc_algebra_new(cstr(atoms).as_ptr(), &mut alg), AgcStatus::Ok);
    alg
}

unsafe fn contract(alg: *const AgcAlgebra, a: &str, g: &str) -> *mut AgcContract {
    let mut c = ptr::null_mut();
    assert_eq!(agc_contract_new(alg, cstr(a).as_ptr(), cstr(g).as_ptr(), &mut c), AgcStatus::Ok);
    c
}

#[test]
fn contracts_round_trip_through_handles() {
    unsafe {
        let alg = algebra("x y");
        assert_eq!(agc_algebra_atom_count(alg), 2);
        let goal = contract(alg, "true", "x");
        let part = contract(alg, "x", "true");

        let mut q = ptr::null_mut();
        assert_eq!(agc_contract_op(AgcOp::Quotient, goal, part, &mut q), AgcStatus::Ok);
        let (mut a, mut g) = (0, 0);
        assert_eq!(agc_contract_masks(q, &mut a, &mut g), AgcStatus::Ok);
        assert_eq!((a, g), (0b11, 0b01));

        let mut composed = ptr::null_mut();
        assert_eq!(agc_contract_op(AgcOp::Compose, q, part, &mut composed), AgcStatus::Ok);
        let mut holds = false;
        assert_eq!(agc_contract_refines(composed, goal, &mut holds), AgcStatus::Ok);
        assert!(holds);

        let mut text = ptr::null_mut();
        assert_eq!(agc_contract_render(q, &mut text), AgcStatus::Ok);
        let rendered = take(text);
        assert_eq!(rendered, "contract(assume = x | y, guarantee = x)");
        let mut parsed = ptr::null_mut();
        assert_eq!(agc_contract_parse(alg, cstr(&rendered).as_ptr(), &mut parsed), AgcStatus::Ok);
        let mut equal = false;
        assert_eq!(agc_contract_equal(parsed, q, &mut equal), AgcStatus::Ok);
        assert!(equal);

        let mut dual = ptr::null_mut();
        assert_eq!(agc_contract_reciprocal(goal, &mut dual), AgcStatus::Ok);
        assert_eq!(agc_contract_masks(dual, &mut a, &mut g), AgcStatus::Ok);
        assert_eq!((a, g), (0b01, 0b11));

        for c in [goal, part, q, composed, parsed, dual] {
            agc_contract_free(c);
        }
        agc_algebra_free(alg);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(agc_algebra_new(cstr("x x").as_ptr(), &mut alg), AgcStatus::InvalidArgument);
        assert!(last_error().contains("duplicate atom"));
        assert_eq!(agc_algebra_new(ptr::null(), &mut alg), AgcStatus::NullPointer);

        let alg = algebra("x y");
        let mut c = ptr::null_mut();
        assert_eq!(agc_contract_new(alg, cstr("x & w").as_ptr(), cstr("y").as_ptr(), &mut c), AgcStatus::ParseError);
        assert_eq!(last_error(), "unknown atom `w` at 1:5");
        assert_eq!(agc_contract_from_masks(alg, 0b01, 0b00, &mut c), AgcStatus::NotCanonical);
        let bad = [0xffu8 as c_char, 0];
        assert_eq!(agc_contract_new(alg, bad.as_ptr(), cstr("y").as_ptr(), &mut c), AgcStatus::InvalidUtf8);

        let other = algebra("p");
        let x = contract(alg, "x", "y");
        let p = contract(other, "p", "p");
        assert_eq!(agc_contract_op(AgcOp::Conj, x, p, &mut c), AgcStatus::MixedAlgebra);
        assert_eq!(agc_contract_op(AgcOp::Conj, x, ptr::null(), &mut c), AgcStatus::NullPointer);
        agc_contract_free(x);
        agc_contract_free(p);
        agc_algebra_free(other);
        agc_algebra_free(alg);
        agc_algebra_free(ptr::null_mut());
        agc_string_free(ptr::null_mut());
    }
}

#[test]
fn eval_matches_the_library_and_reports_positions() {
    let source = "universe x y;\ncontract C { assume: true; guarantee: x; }\nprint recip(C);\ncheck equal(quotient(C, Identity), C);\n";
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(agc_eval(cstr(source).as_ptr(), AgcFormat::Text, &mut out), AgcStatus::Ok);
        let spec = agc::dsl::parse_spec(source).unwrap();
        assert_eq!(take(out), agc::dsl::eval(&spec).to_text());
        assert_eq!(agc_eval(cstr(source).as_ptr(), AgcFormat::Json, &mut out), AgcStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(json["ok"], true);

        let bad = cstr("universe x;\nlet A = conj(B, Top);\n");
        assert_eq!(agc_eval(bad.as_ptr(), AgcFormat::Text, &mut out), AgcStatus::ParseError);
        assert_eq!(last_error(), "2:14: unknown name `B`");
    }
}

#[test]
fn laws_report_status() {
    unsafe {
        let mut out = ptr::null_mut();
        let status = agc_laws(1, cstr("semirings,actions").as_ptr(), 0xA6C, AgcFormat::Json, &mut out);
        assert_eq!(status, AgcStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(json["ok"], true);
        assert_eq!(json["suites"].as_array().unwrap().len(), 2);

        assert_eq!(agc_laws(9, ptr::null(), 0, AgcFormat::Text, &mut out), AgcStatus::InvalidArgument);
        assert_eq!(agc_laws(1, cstr("nope").as_ptr(), 0, AgcFormat::Text, &mut out), AgcStatus::InvalidArgument);
        assert!(last_error().contains("unknown suite"));
    }
}

#[test]
fn header_declares_the_api_and_links_from_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/agc.h")).unwrap();
    for name in [
        "typedef struct AgcAlgebra AgcAlgebra;",
        "typedef struct AgcContract AgcContract;",
        "AGC_STATUS_OK = 0",
        "agc_algebra_new(",
        "agc_contract_op(",
        "agc_eval(",
        "agc_laws(",
        "agc_last_error_message(void)",
        "agc_string_free(",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }

    let src = std::env::temp_dir().join(format!("agc-header-{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include <stdio.h>\n\
         #include \"agc.h\"\n\
         int main(void) {\n\
           AgcAlgebra *alg = 0; AgcContract *goal = 0, *part = 0, *q = 0; char *text = 0;\n\
           if (agc_algebra_new(\"x y\", &alg) != AGC_STATUS_OK) return 10;\n\
           agc_contract_new(alg, \"true\", \"x | y\", &goal);\n\
           agc_contract_new(alg, \"x\", \"y\", &part);\n\
           if (agc_contract_op(AGC_OP_QUOTIENT, goal, part, &q) != AGC_STATUS_OK) return 11;\n\
           agc_contract_render(q, &text);\n\
           printf(\"%s\\n\", text);\n\
           agc_string_free(text);\n\
           if (agc_contract_new(alg, \"z\", \"y\", &part) != AGC_STATUS_PARSE_ERROR) return 12;\n\
           printf(\"%s\\n\", agc_last_error_message());\n\
           agc_contract_free(q); agc_contract_free(part); agc_contract_free(goal);\n\
           agc_algebra_free(alg);\n\
           if (agc_laws(1, \"all\", 0, AGC_FORMAT_TEXT, &text) != AGC_STATUS_OK) return 13;\n\
           agc_string_free(text);\n\
           return 0;\n\
         }\n",
    )
    .unwrap();
    // integration tests run from target/<profile>/deps, next to the static library
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libagc_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = src.with_extension("bin");
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror"])
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is installed");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(run.stdout).unwrap(),
        "contract(assume = y, guarantee = x)\nunknown atom `z` at 1:1\n"
    );
    let _ = std::fs::remove_file(&src);
    let _ = std::fs::remove_file(&exe);
}

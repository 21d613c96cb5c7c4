// Copyright 2026 The spinlat developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! C ABI for the spinlat library.
//!
//! Models are opaque handles created by [`spinlat_model_parse`] and released
//! with [`spinlat_model_free`]. Every operation returns a status code from
//! the same numbering the CLI uses for exit codes; on failure a thread-local
//! message is available via [`spinlat_last_error`]. Strings returned through
//! `char**` out-parameters are owned by the caller and must be released with
//! [`spinlat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
#[cfg(test)]
use std::ptr;

use spinlat::measurement::{
    correlation_csv, measure_correlation, spectral_peaks, spectrum_csv,
    spectrum_time_series, CorrelationSpec, SpectrumSpec,
};
use spinlat::model::{ModelFile, Preparation, StatisticsModel};
use spinlat::mappings::{
    validate_anyon_algebra, validate_fermion_algebra, validate_modified_commutators,
};
use spinlat::pauli::PauliString;
use spinlat::synthesis::{trotter_circuit, Circuit};
use spinlat::Error;

/// Success.
pub const SPINLAT_OK: i32 = 0;
/// A required pointer argument was null.
pub const SPINLAT_ERR_NULL: i32 = 1;
/// Input text failed to parse (bad JSON or invalid UTF-8).
pub const SPINLAT_ERR_PARSE: i32 = 2;
/// The model is semantically invalid (non-Hermitian, bad state spec, ...).
pub const SPINLAT_ERR_MODEL: i32 = 3;
/// An algebra validation suite reported a violated relation.
pub const SPINLAT_ERR_VALIDATION: i32 = 4;
/// A dense-oracle resource limit was exceeded.
pub const SPINLAT_ERR_RESOURCE: i32 = 5;

/// Opaque parsed model handle.
pub struct SpinlatModel {
    inner: ModelFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("no interior nul");
    });
}

fn status_of(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => SPINLAT_ERR_PARSE,
        Error::OracleLimit { .. } => SPINLAT_ERR_RESOURCE,
        _ => SPINLAT_ERR_MODEL,
    }
}

fn fail(err: &Error) -> i32 {
    set_last_error(&err.to_string());
    status_of(err)
}

/// # Safety: `text` must be a valid nul-terminated string or null.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, i32> {
    if text.is_null() {
        set_last_error("null string argument");
        return Err(SPINLAT_ERR_NULL);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8");
        SPINLAT_ERR_PARSE
    })
}

fn write_string(out: *mut *mut c_char, content: String) -> i32 {
    if out.is_null() {
        set_last_error("null output argument");
        return SPINLAT_ERR_NULL;
    }
    let c = CString::new(content.replace('\0', " ")).expect("no interior nul");
    unsafe { *out = c.into_raw() };
    SPINLAT_OK
}

unsafe fn model_ref<'a>(model: *const SpinlatModel) -> Result<&'a ModelFile, i32> {
    match model.as_ref() {
        Some(m) => Ok(&m.inner),
        None => {
            set_last_error("null model handle");
            Err(SPINLAT_ERR_NULL)
        }
    }
}

fn census_line(circuit: &Circuit) -> String {
    let c = circuit.census();
    format!(
        "# census rx={} ry={} rz={} zz={} cpexp={} cphase={} total={}\n",
        c.rx,
        c.ry,
        c.rz,
        c.zz,
        c.cpexp,
        c.cphase,
        c.total()
    )
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn spinlat_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse a JSON model file into a handle. On success writes the handle to
/// `out` and returns `SPINLAT_OK`.
///
/// # Safety
/// `text` must be nul-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_model_parse(
    text: *const c_char,
    out: *mut *mut SpinlatModel,
) -> i32 {
    if out.is_null() {
        set_last_error("null output argument");
        return SPINLAT_ERR_NULL;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match ModelFile::parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(SpinlatModel { inner }));
            SPINLAT_OK
        }
        Err(err) => fail(&err),
    }
}

/// Release a model handle. Null is a no-op.
///
/// # Safety
/// `model` must have come from [`spinlat_model_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn spinlat_model_free(model: *mut SpinlatModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `text` must have been returned through a `char**` out-parameter here.
#[no_mangle]
pub unsafe extern "C" fn spinlat_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Re-render the model as canonical JSON.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_model_render(
    model: *const SpinlatModel,
    out: *mut *mut c_char,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    write_string(out, model.render())
}

/// Number of qubits in the mapped register.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_model_num_qubits(
    model: *const SpinlatModel,
    out: *mut usize,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    if out.is_null() {
        set_last_error("null output argument");
        return SPINLAT_ERR_NULL;
    }
    *out = model.num_qubits();
    SPINLAT_OK
}

/// Compile the Trotterized evolution circuit; `steps == 0` uses the model's
/// step count (default 64). Writes circuit text followed by a census line.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_compile(
    model: *const SpinlatModel,
    steps: usize,
    out: *mut *mut c_char,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let h = match model.pauli_hamiltonian() {
        Ok(h) => h,
        Err(err) => return fail(&err),
    };
    let steps = if steps > 0 {
        steps
    } else {
        model.run.trotter_steps.unwrap_or(64)
    };
    let t = model.run.total_time.unwrap_or(1.0);
    let circuit = if h.is_zero() {
        Ok(Circuit::new(model.num_qubits()))
    } else {
        trotter_circuit(&h, t, steps)
    };
    match circuit {
        Ok(c) => write_string(out, format!("{}{}", c.to_text(), census_line(&c))),
        Err(err) => fail(&err),
    }
}

/// Build the initial-state preparation circuit, with post-selection
/// metadata appended as comment lines when applicable.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_prep(
    model: *const SpinlatModel,
    out: *mut *mut c_char,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match model.preparation() {
        Ok(prep) => {
            let mut text = prep.circuit().to_text();
            if let Preparation::PostSelected(p) = &prep {
                text.push_str(&format!(
                    "# ancillas {:?}\n# predicted success probability {:.16e}\n",
                    p.ancilla_indices, p.predicted_success_probability
                ));
            }
            text.push_str(&census_line(prep.circuit()));
            write_string(out, text)
        }
        Err(err) => fail(&err),
    }
}

fn build_correlation(model: &ModelFile) -> Result<CorrelationSpec, Error> {
    let n = model.num_qubits();
    let op = |text: &Option<String>| -> Result<PauliString, Error> {
        match text {
            Some(t) => model.correlation_operator(t),
            None => Ok(PauliString::identity(n)),
        }
    };
    Ok(CorrelationSpec {
        a: op(&model.run.a)?,
        b: op(&model.run.b)?,
        hamiltonian: model.pauli_hamiltonian()?,
        prep: model.preparation()?.circuit().clone(),
        times: if model.run.times.is_empty() {
            vec![0.0]
        } else {
            model.run.times.clone()
        },
        backend: model.backend()?,
        trotter_steps_per_unit: model.run.trotter_steps.unwrap_or(64),
        oracle_limit: model.oracle_limit(None),
    })
}

/// Measure G(t) over the model's time grid; writes CSV `t,re,im`.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_correlate(
    model: *const SpinlatModel,
    out: *mut *mut c_char,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let result = build_correlation(model).and_then(|spec| measure_correlation(&spec));
    match result {
        Ok(rows) => write_string(out, correlation_csv(&rows)),
        Err(err) => fail(&err),
    }
}

/// Extract spectral peaks of the Hamiltonian; writes CSV `lambda,weight`.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_spectrum(
    model: *const SpinlatModel,
    out: *mut *mut c_char,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let result = (|| -> Result<String, Error> {
        let dt = model
            .run
            .dt
            .ok_or_else(|| Error::InvalidModel("spectrum needs run.dt".into()))?;
        let num_samples = model
            .run
            .num_samples
            .ok_or_else(|| Error::InvalidModel("spectrum needs run.num_samples".into()))?;
        let spec = SpectrumSpec {
            q: model.pauli_hamiltonian()?,
            prep: model.preparation()?.circuit().clone(),
            dt,
            num_samples,
            backend: model.backend()?,
            trotter_steps_per_unit: model.run.trotter_steps.unwrap_or(64),
            oracle_limit: model.oracle_limit(None),
        };
        let series = spectrum_time_series(&spec)?;
        Ok(spectrum_csv(&spectral_peaks(&series, dt)?))
    })();
    match result {
        Ok(csv) => write_string(out, csv),
        Err(err) => fail(&err),
    }
}

/// Run the algebra validation suite for the model's statistics. Writes a
/// pass/fail report; returns `SPINLAT_ERR_VALIDATION` if any relation fails.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinlat_validate(
    model: *const SpinlatModel,
    out: *mut *mut c_char,
) -> i32 {
    let model = match model_ref(model) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let tolerance = 1e-12;
    let modes = model.num_modes.clamp(2, 5);
    let report = match model.statistics {
        StatisticsModel::Fermion => validate_fermion_algebra(modes, tolerance),
        StatisticsModel::Anyon { theta } => {
            validate_anyon_algebra(modes.min(4), theta, tolerance)
        }
        StatisticsModel::Boson { n_max } => {
            validate_modified_commutators(n_max.min(4), tolerance)
        }
    };
    match report {
        Ok(report) => {
            let mut text = String::new();
            for check in &report.checks {
                let status = if check.passed() { "pass" } else { "FAIL" };
                text.push_str(&format!(
                    "{status} {} (violation {:.3e}, tolerance {:.1e})\n",
                    check.name, check.violation, check.tolerance
                ));
            }
            let ok = report.passed();
            let code = write_string(out, text);
            if code != SPINLAT_OK {
                code
            } else if ok {
                SPINLAT_OK
            } else {
                set_last_error("validation suite reported violated relations");
                SPINLAT_ERR_VALIDATION
            }
        }
        Err(err) => fail(&err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPPING: &str = r#"{
      "statistics": {"kind": "fermion"},
      "num_modes": 2,
      "hamiltonian": [
        {"coefficient": [1.0, 0.0],
         "factors": [{"kind": "create", "mode": 0}, {"kind": "annihilate", "mode": 1}]},
        {"coefficient": [1.0, 0.0],
         "factors": [{"kind": "create", "mode": 1}, {"kind": "annihilate", "mode": 0}]}
      ],
      "initial_state": {"kind": "slater", "occupied": [0]},
      "run": {"times": [0.0, 0.5], "dt": 0.1, "num_samples": 128,
              "a": "X0", "b": "X0"}
    }"#;

    unsafe fn parse(text: &str) -> *mut SpinlatModel {
        let c = CString::new(text).unwrap();
        let mut handle = ptr::null_mut();
        assert_eq!(spinlat_model_parse(c.as_ptr(), &mut handle), SPINLAT_OK);
        assert!(!handle.is_null());
        handle
    }

    unsafe fn take_string(out: *mut c_char) -> String {
        let s = CStr::from_ptr(out).to_str().unwrap().to_owned();
        spinlat_string_free(out);
        s
    }

    #[test]
    fn parse_render_round_trip() {
        unsafe {
            let model = parse(HOPPING);
            let mut rendered = ptr::null_mut();
            assert_eq!(spinlat_model_render(model, &mut rendered), SPINLAT_OK);
            let text = take_string(rendered);
            let again = parse(&text);
            let mut qubits = 0usize;
            assert_eq!(spinlat_model_num_qubits(again, &mut qubits), SPINLAT_OK);
            assert_eq!(qubits, 2);
            spinlat_model_free(model);
            spinlat_model_free(again);
        }
    }

    #[test]
    fn parse_failure_sets_message() {
        unsafe {
            let c = CString::new("{broken").unwrap();
            let mut handle = ptr::null_mut();
            assert_eq!(spinlat_model_parse(c.as_ptr(), &mut handle), SPINLAT_ERR_PARSE);
            assert!(handle.is_null());
            let msg = CStr::from_ptr(spinlat_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            let mut handle = ptr::null_mut();
            assert_eq!(spinlat_model_parse(ptr::null(), &mut handle), SPINLAT_ERR_NULL);
            let mut out = ptr::null_mut();
            assert_eq!(spinlat_compile(ptr::null(), 0, &mut out), SPINLAT_ERR_NULL);
            spinlat_model_free(ptr::null_mut());
            spinlat_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn compile_and_prep_produce_text() {
        unsafe {
            let model = parse(HOPPING);
            let mut out = ptr::null_mut();
            assert_eq!(spinlat_compile(model, 4, &mut out), SPINLAT_OK);
            let circuit = take_string(out);
            assert!(circuit.contains("ZZ q0 q1"));
            assert!(circuit.contains("# census"));
            let mut out = ptr::null_mut();
            assert_eq!(spinlat_prep(model, &mut out), SPINLAT_OK);
            assert!(take_string(out).contains("RX q0"));
            spinlat_model_free(model);
        }
    }

    #[test]
    fn correlate_and_spectrum_emit_csv() {
        unsafe {
            let model = parse(HOPPING);
            let mut out = ptr::null_mut();
            assert_eq!(spinlat_correlate(model, &mut out), SPINLAT_OK);
            let csv = take_string(out);
            assert!(csv.starts_with("t,re,im\n"));
            assert_eq!(csv.lines().count(), 3);
            let mut out = ptr::null_mut();
            assert_eq!(spinlat_spectrum(model, &mut out), SPINLAT_OK);
            let csv = take_string(out);
            assert!(csv.starts_with("lambda,weight\n"));
            assert_eq!(csv.lines().count(), 3);
            spinlat_model_free(model);
        }
    }

    #[test]
    fn non_hermitian_model_is_rejected() {
        unsafe {
            let model = parse(
                r#"{"statistics": {"kind": "fermion"}, "num_modes": 2,
                    "hamiltonian": [{"coefficient": [1.0, 0.0],
                      "factors": [{"kind": "create", "mode": 0},
                                  {"kind": "annihilate", "mode": 1}]}]}"#,
            );
            let mut out = ptr::null_mut();
            assert_eq!(spinlat_compile(model, 0, &mut out), SPINLAT_ERR_MODEL);
            spinlat_model_free(model);
        }
    }

    #[test]
    fn validate_passes_for_each_statistics() {
        for text in [
            HOPPING.to_string(),
            r#"{"statistics": {"kind": "anyon", "theta": 0.5},
                "num_modes": 3, "hamiltonian": []}"#
                .to_string(),
            r#"{"statistics": {"kind": "boson", "n_max": 2},
                "num_modes": 2, "hamiltonian": []}"#
                .to_string(),
        ] {
            unsafe {
                let model = parse(&text);
                let mut out = ptr::null_mut();
                assert_eq!(spinlat_validate(model, &mut out), SPINLAT_OK);
                let report = take_string(out);
                assert!(report.lines().all(|l| l.starts_with("pass ")));
                spinlat_model_free(model);
            }
        }
    }
}

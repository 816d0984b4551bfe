//! Shared constants cache.
//!
//! astro-float's `Consts` memoizes pi/e/ln2/ln10 at the largest precision
//! ever requested but needs `&mut`; a thread-local cell keeps every
//! operation signature pure. Values are correctly rounded, so results do
//! not depend on which thread computed them.

use std::cell::RefCell;

use astro_float::Consts;

use super::{BigReal, Precision, RM};

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache allocation"));
}

/// Runs `f` with the thread's constants cache.
pub fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// pi, correctly rounded to within 1 ulp at `prec`.
pub fn constant_pi(prec: Precision) -> BigReal {
    let v = with_consts(|cc| cc.pi(prec.bits_usize(), RM));
    BigReal::from_raw(v, prec)
}

/// ln 2, correctly rounded to within 1 ulp at `prec`.
pub fn constant_ln2(prec: Precision) -> BigReal {
    let v = with_consts(|cc| cc.ln_2(prec.bits_usize(), RM));
    BigReal::from_raw(v, prec)
}

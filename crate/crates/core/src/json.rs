//! JSON helpers. Integers are emitted as numbers when they fit 64 bits and
//! as decimal strings otherwise.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::Value;

pub fn big_uint(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn big_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn u128_value(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

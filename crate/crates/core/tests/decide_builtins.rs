use sigma_core::builders::{builtin, golden_verdicts, BUILTIN_NAMES};
use sigma_core::certificate::verify_certificate;
use sigma_core::decide::sigma_membership;
use sigma_core::Character;

#[test]
fn builtins_reproduce_golden_verdicts() {
    for name in BUILTIN_NAMES {
        for gold in golden_verdicts(name) {
            let c = builtin(name, gold.ring).unwrap();
            let xi = Character::from_ints(&gold.direction).unwrap();
            let v = sigma_membership(&c, &xi, gold.k, None).unwrap();
            assert_eq!(v.status_name(), gold.status, "{name} {xi} k={} {}: {:?}", gold.k, gold.ring, v.status);
            if let Some(cert) = v.certificate() {
                verify_certificate(&c, cert).unwrap();
            }
        }
    }
}

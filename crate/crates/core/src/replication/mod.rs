//! Links, blockers, ethers and replication certificates.

pub mod certificate;
pub mod ether;
pub mod link;

pub use certificate::{replication_certificate, verify_replicator, ReplicationCertificate, VerifyReport};
pub use ether::{
    canonical_signature, ether_from_signature, produce_ether, reflection_class, EtherDescriptor, ReflectionClass,
    Signature, DEFAULT_ETHER_CAP,
};
pub use link::{compute_link, compute_link_with, is_blocker, is_nondegenerate, link_at, link_void_index, LinkString};

/// Exact rationals as `{"num": p, "den": q, "decimal": "..."}`.
pub mod ratio_json {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: u64,
        den: u64,
        #[serde(default)]
        decimal: String,
    }

    pub fn decimal(r: &Ratio<u64>) -> String {
        format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
    }

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: *r.numer(),
            den: *r.denom(),
            decimal: decimal(r),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(r.num, r.den))
    }
}

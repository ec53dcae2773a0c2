//! JSON certificates: a versioned envelope around a replayable payload,
//! bound to its subject by a hash of the subject's canonical text.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use zipper_core::certify::{
    barycentric_collapse_lift, replay_edge_zipping, transport_zipping, verify_collapse_to_point,
    verify_construction, verify_shelling, verify_simplicial_collapse, verify_zipping,
    zipping_from_construction, zipping_from_edge_zipping, CollapseSequence, ConstructionTree,
    EdgeZipStep, ShellSequence, SimplicialCollapse, ZipGoal, ZipStep,
};
use zipper_core::ops::barycentric;
use zipper_core::{find_isomorphism, Poset};

use crate::error::CliError;
use crate::text::{
    canonical_form, parse_facets, parse_poset, parse_subject, subject_text, write_facets,
    write_poset, Subject,
};

pub const FORMAT: &str = "zipper-certificate";
pub const VERSION: u32 = 1;
pub const ENGINE: &str = concat!("zipper ", env!("CARGO_PKG_VERSION"));

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubjectKind {
    Poset,
    Facets,
}

/// The subject in canonical text, with its hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectRef {
    pub kind: SubjectKind,
    pub hash: String,
    pub text: String,
}

impl SubjectRef {
    pub fn of(s: &Subject) -> Self {
        let text = subject_text(s);
        let kind = match s {
            Subject::Poset(_) => SubjectKind::Poset,
            Subject::Facets(_) => SubjectKind::Facets,
        };
        SubjectRef {
            kind,
            hash: sha256_hex(&text),
            text,
        }
    }
}

/// Where a zipping ends; an isomorphism target is stored as canonical poset text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZipTarget {
    Singleton,
    DualCone,
    Isomorphic(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    /// Construction tree of the subject poset.
    Construction(ConstructionTree),
    Zipping {
        target: ZipTarget,
        steps: Vec<ZipStep>,
    },
    /// Edge contractions of the subject complex ending at `target` (canonical facet text).
    EdgeZipping {
        target: String,
        steps: Vec<EdgeZipStep>,
    },
    Shelling(ShellSequence),
    /// Collapse of the subject poset to a point.
    Collapse(CollapseSequence),
    /// Free-face pairs on the barycentric subdivision of the subject.
    SimplicialCollapse(SimplicialCollapse),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Construction(_) => "construction",
            Payload::Zipping { .. } => "zipping",
            Payload::EdgeZipping { .. } => "edge_zipping",
            Payload::Shelling(_) => "shelling",
            Payload::Collapse(_) => "collapse",
            Payload::SimplicialCollapse(_) => "simplicial_collapse",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub engine: String,
    pub subject: SubjectRef,
    #[serde(flatten)]
    pub body: Payload,
    /// SHA-256 of the certificate's JSON with this field removed.
    pub digest: String,
}

fn digest_of(cert: &Certificate) -> Result<String, CliError> {
    let mut v = serde_json::to_value(cert)?;
    if let Some(map) = v.as_object_mut() {
        map.remove("digest");
    }
    Ok(sha256_hex(&serde_json::to_string(&v)?))
}

impl Certificate {
    pub fn new(subject: &Subject, body: Payload) -> Self {
        let mut cert = Certificate {
            format: FORMAT.into(),
            version: VERSION,
            engine: ENGINE.into(),
            subject: SubjectRef::of(subject),
            body,
            digest: String::new(),
        };
        cert.digest = digest_of(&cert).expect("certificates serialize");
        cert
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The subject as stored, checked to be canonical and to match its hash.
    pub fn subject(&self) -> Result<Subject, CliError> {
        let s = &self.subject;
        if sha256_hex(&s.text) != s.hash {
            return Err(CliError::Rejected(
                "subject text does not match its hash".into(),
            ));
        }
        let parsed = match s.kind {
            SubjectKind::Poset => Subject::Poset(parse_poset(&s.text)?),
            SubjectKind::Facets => Subject::Facets(parse_facets(&s.text)?),
        };
        if subject_text(&parsed) != s.text {
            return Err(CliError::Rejected(
                "subject text is not in canonical form".into(),
            ));
        }
        Ok(parsed)
    }
}

fn reject(e: impl std::fmt::Display) -> CliError {
    CliError::Rejected(e.to_string())
}

fn as_poset(s: &Subject) -> Result<Poset, CliError> {
    match s {
        Subject::Poset(p) => Ok(p.clone()),
        Subject::Facets(_) => Err(reject("certificate kind needs a poset subject")),
    }
}

fn zip_goal(t: &ZipTarget) -> Result<ZipGoal, CliError> {
    Ok(match t {
        ZipTarget::Singleton => ZipGoal::Singleton,
        ZipTarget::DualCone => ZipGoal::DualCone,
        ZipTarget::Isomorphic(text) => ZipGoal::Isomorphic(parse_poset(text)?),
    })
}

/// Checks envelope, digest and subject binding, then replays the payload.
/// `external` is a subject file the certificate must refer to.
pub fn verify(cert: &Certificate, external: Option<&Subject>) -> Result<(), CliError> {
    if cert.format != FORMAT || cert.version != VERSION {
        return Err(reject(format!(
            "unsupported certificate format {} version {}",
            cert.format, cert.version
        )));
    }
    if !cert.engine.starts_with("zipper ") {
        return Err(reject(format!("unknown engine `{}`", cert.engine)));
    }
    if digest_of(cert)? != cert.digest {
        return Err(reject("digest mismatch: the certificate was altered"));
    }
    let subject = cert.subject()?;
    if let Some(ext) = external {
        if sha256_hex(&subject_text(ext)) != cert.subject.hash {
            return Err(reject("certificate refers to a different subject"));
        }
    }
    replay(&subject, &cert.body)
}

/// Semantic check of a payload against its subject, without the envelope.
pub fn replay(subject: &Subject, body: &Payload) -> Result<(), CliError> {
    match body {
        Payload::Construction(t) => verify_construction(&as_poset(subject)?, t).map_err(reject),
        Payload::Zipping { target, steps } => {
            verify_zipping(&as_poset(subject)?, steps, &zip_goal(target)?).map_err(reject)
        }
        Payload::EdgeZipping { target, steps } => {
            let Subject::Facets(k) = subject else {
                return Err(reject("edge zipping needs a facet subject"));
            };
            let goal = parse_facets(target)?;
            let end = replay_edge_zipping(k, steps).map_err(reject)?;
            let (a, b) = (end.face_poset(), goal.face_poset());
            if a.len() == b.len() && find_isomorphism(&a, &b).is_some() {
                Ok(())
            } else {
                Err(reject("edge zipping does not end at the target"))
            }
        }
        Payload::Shelling(seq) => verify_shelling(&as_poset(subject)?, seq).map_err(reject),
        Payload::Collapse(seq) => {
            verify_collapse_to_point(&as_poset(subject)?, seq).map_err(reject)
        }
        Payload::SimplicialCollapse(c) => {
            verify_simplicial_collapse(&barycentric(&as_poset(subject)?), c).map_err(reject)
        }
    }
}

/// Re-expresses a zipping of `p` (in `p`'s element order) on the canonical copy of `p`.
fn canonical_zipping(
    p: &Poset,
    steps: &[ZipStep],
    target: ZipTarget,
) -> Result<Certificate, CliError> {
    let (c, pos) = canonical_form(p);
    let moved = transport_zipping(p, &c, &pos, steps)?;
    Ok(Certificate::new(
        &Subject::Poset(c),
        Payload::Zipping {
            target,
            steps: moved,
        },
    ))
}

/// Derived certificates: edge zipping to zipping, construction of `K*` to
/// zipping of `K`, poset collapse to simplicial collapse of the subdivision.
pub fn translate(cert: &Certificate) -> Result<Certificate, CliError> {
    verify(cert, None)?;
    let subject = cert.subject()?;
    match (&cert.body, &subject) {
        (Payload::EdgeZipping { target, steps }, Subject::Facets(k)) => {
            let zs = zipping_from_edge_zipping(k, steps)?;
            let goal = parse_facets(target)?.face_poset();
            canonical_zipping(
                &k.face_poset(),
                &zs,
                ZipTarget::Isomorphic(write_poset(&goal, None)),
            )
        }
        (Payload::Construction(t), Subject::Poset(p)) => {
            let k = p.dual();
            let bridge = zipping_from_construction(&k, t)?;
            canonical_zipping(&k, &bridge.steps, ZipTarget::Singleton)
        }
        (Payload::Collapse(seq), Subject::Poset(p)) => {
            let lifted = barycentric_collapse_lift(p, seq).map_err(reject)?;
            Ok(Certificate::new(
                &subject,
                Payload::SimplicialCollapse(lifted),
            ))
        }
        (body, _) => Err(CliError::Usage(format!(
            "no translation for {} certificates",
            body.kind()
        ))),
    }
}

/// Canonical copy of a poset; certificates index elements in this order.
pub fn canonical_poset(p: &Poset) -> Poset {
    parse_poset(&write_poset(p, None)).expect("canonical text parses")
}

/// Canonical copy of a subject, so certificate indices match the stored text.
pub fn canonical_subject(s: &Subject) -> Subject {
    match s {
        Subject::Poset(p) => Subject::Poset(canonical_poset(p)),
        Subject::Facets(k) => {
            Subject::Facets(parse_facets(&write_facets(k, None)).expect("canonical text parses"))
        }
    }
}

/// Parses any subject file into its canonical copy.
pub fn load_subject(text: &str) -> Result<Subject, CliError> {
    Ok(canonical_subject(&parse_subject(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zipper_core::certify::{find_collapse_to_point, find_construction, find_zipping};
    use zipper_core::ops::{cube, simplex};

    fn square() -> Poset {
        canonical_poset(&cube(&["x", "y"]))
    }

    fn zip_cert(p: &Poset) -> Certificate {
        let steps = find_zipping(p, &ZipGoal::Singleton).found().unwrap();
        Certificate::new(
            &Subject::Poset(p.clone()),
            Payload::Zipping {
                target: ZipTarget::Singleton,
                steps,
            },
        )
    }

    #[test]
    fn json_round_trip_keeps_the_digest() {
        let c = zip_cert(&square());
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(verify(&back, None).is_ok());
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["kind"], "zipping");
        assert_eq!(v["format"], FORMAT);
    }

    #[test]
    fn tampering_is_caught_by_the_digest() {
        let mut c = zip_cert(&square());
        c.engine = "zipper 9.9".into();
        assert!(matches!(verify(&c, None), Err(CliError::Rejected(m)) if m.contains("digest")));
    }

    #[test]
    fn reordered_steps_fail_on_replay() {
        let p = square();
        let mut c = zip_cert(&p);
        if let Payload::Zipping { steps, .. } = &mut c.body {
            steps.reverse();
        }
        let c = Certificate::new(&Subject::Poset(p), c.body);
        assert!(verify(&c, None).is_err());
    }

    #[test]
    fn external_subject_must_match() {
        let c = zip_cert(&square());
        assert!(verify(&c, Some(&Subject::Poset(cube(&["x", "y"])))).is_ok());
        assert!(verify(&c, Some(&Subject::Poset(simplex(&["a", "b"])))).is_err());
    }

    #[test]
    fn non_canonical_subject_text_is_rejected() {
        let mut c = zip_cert(&square());
        c.subject.text = format!("# comment\n{}", c.subject.text);
        c.subject.hash = sha256_hex(&c.subject.text);
        c.digest = digest_of(&c).unwrap();
        assert!(matches!(verify(&c, None), Err(CliError::Rejected(m)) if m.contains("canonical")));
    }

    #[test]
    fn facet_subjects_search_on_the_canonical_face_poset() {
        let k = parse_facets("facets: abc acd\n").unwrap();
        let p = canonical_poset(&k.face_poset());
        let t = find_construction(&p).found().unwrap();
        let c = Certificate::new(&Subject::Poset(p), Payload::Construction(t));
        assert!(verify(&c, Some(&Subject::Poset(k.face_poset()))).is_ok());
    }

    #[test]
    fn translations_verify() {
        let p = square();
        let dual = canonical_poset(&p.dual());
        let t = find_construction(&dual).found().unwrap();
        let c = Certificate::new(&Subject::Poset(dual), Payload::Construction(t));
        let z = translate(&c).unwrap();
        assert!(verify(&z, None).is_ok());

        let seq = find_collapse_to_point(&p).found().unwrap();
        let c = Certificate::new(&Subject::Poset(p), Payload::Collapse(seq));
        let s = translate(&c).unwrap();
        assert_eq!(s.body.kind(), "simplicial_collapse");
        assert!(verify(&s, None).is_ok());
        assert!(matches!(translate(&s), Err(CliError::Usage(_))));
    }
}

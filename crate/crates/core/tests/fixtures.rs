use flatfuk_core::fixtures::{generate, NAMES};
use flatfuk_core::scene::Scene;
use std::path::PathBuf;

fn shipped(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(format!("{name}.json"));
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn shipped_scenes_match_generators() {
    for name in NAMES {
        assert_eq!(generate(name).unwrap().to_text(), shipped(name), "{name}: regenerate with `flatfuk fixtures generate`");
    }
}

#[test]
fn generation_is_deterministic() {
    for name in NAMES {
        assert_eq!(generate(name).unwrap().to_text(), generate(name).unwrap().to_text(), "{name}");
    }
}

#[test]
fn scenes_round_trip() {
    for name in NAMES {
        let text = shipped(name);
        let s = Scene::parse(&text).unwrap();
        assert_eq!(s.to_text(), text, "{name}");
    }
}

#[test]
fn scenes_are_transverse_and_valid() {
    for name in NAMES {
        let s = generate(name).unwrap();
        let arr = s.arrangement();
        assert!(arr.transversal, "{name}: {:?}", arr.witness);
        for c in &s.curves {
            c.validate(&s.surface).unwrap_or_else(|e| panic!("{name}/{}: {e}", c.name));
        }
    }
}

#[test]
fn unknown_fixture() {
    assert!(generate("torus-nothing").is_err());
}

#[test]
fn scene_errors() {
    assert!(Scene::parse("{").is_err());
    let mut v: serde_json::Value = serde_json::from_str(&shipped("torus-theta")).unwrap();
    v["curves"][1]["name"] = "L0".into();
    assert!(Scene::from_json(&v).is_err(), "duplicate names");
    let mut v: serde_json::Value = serde_json::from_str(&shipped("torus-pushoff-equal")).unwrap();
    v["morphisms"][0]["target"] = "W".into();
    assert!(Scene::from_json(&v).is_err(), "dangling reference");
}

//! JSON input schemas: groups, τ, σ and subgroups.

use std::collections::BTreeMap;

use serde_json::Value;
use taumackey::group::{
    construct_family, construct_semidirect_with_involution, direct_product, permutation_group, FamilySpec, Subgroup,
    DEFAULT_CAP,
};
use taumackey::morphisms::{
    conjugation, identity_automorphism, map_from_generator_images, swap_factors, tau_clifford, tau_identity, tau_inner,
    tau_inverse,
};
use taumackey::{ElementId, GroupMap, GroupTable, MapKind};

use crate::CliError;

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::usage(format!("{path}: missing field `{key}`")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::usage(format!("{path}: expected a non-negative integer")))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::usage(format!("{path}: expected a string")))
}

/// Reads `raw` as JSON, or as the contents of a file when it starts with `@`.
pub fn read_json(raw: &str, path: &str) -> Result<Value, CliError> {
    let text = match raw.strip_prefix('@') {
        Some(file) => std::fs::read_to_string(file)
            .map_err(|e| CliError::usage(format!("{path}: cannot read {file}: {e}")))?,
        None => raw.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{path}: invalid JSON: {e}")))
}

/// Like [`read_json`], but a bare word such as `inverse` is taken as a string.
pub fn read_json_or_word(raw: &str, path: &str) -> Result<Value, CliError> {
    let trimmed = raw.trim();
    if !trimmed.starts_with(['{', '[', '"', '@']) {
        return Ok(Value::String(trimmed.to_string()));
    }
    read_json(trimmed, path)
}

fn family_spec(v: &Value, path: &str) -> Result<FamilySpec, CliError> {
    let name = as_str(field(v, path, "family")?, &format!("{path}.family"))?;
    let n = || as_usize(field(v, path, "n")?, &format!("{path}.n"));
    Ok(match name {
        "cyclic" => FamilySpec::Cyclic(n()?),
        "dihedral" => FamilySpec::Dihedral(n()?),
        "symmetric" => FamilySpec::Symmetric(n()?),
        "alternating" => FamilySpec::Alternating(n()?),
        "quaternion8" | "quaternion" => FamilySpec::Quaternion8,
        "clifford" => FamilySpec::Clifford(n()?),
        other => return Err(CliError::usage(format!("{path}.family: unknown family `{other}`"))),
    })
}

pub fn build_group(v: &Value, path: &str) -> Result<GroupTable, CliError> {
    let ctx = |e: taumackey::Error| CliError::from_core(e, path);
    if v.get("family").is_some() {
        return construct_family(&family_spec(v, path)?, DEFAULT_CAP).map_err(ctx);
    }
    if let Some(gens) = v.get("generators") {
        let gens = gens
            .as_array()
            .ok_or_else(|| CliError::usage(format!("{path}.generators: expected an array")))?
            .iter()
            .enumerate()
            .map(|(i, g)| as_str(g, &format!("{path}.generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let degree = as_usize(field(v, path, "degree")?, &format!("{path}.degree"))?;
        return permutation_group(&gens, degree, DEFAULT_CAP).map_err(ctx);
    }
    if let Some(parts) = v.get("product") {
        let parts = parts
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| CliError::usage(format!("{path}.product: expected two group specs")))?;
        let left = build_group(&parts[0], &format!("{path}.product[0]"))?;
        let right = build_group(&parts[1], &format!("{path}.product[1]"))?;
        return direct_product(&left, &right, DEFAULT_CAP).map_err(ctx);
    }
    if let Some(sd) = v.get("semidirect") {
        let sd_path = format!("{path}.semidirect");
        let base = build_group(field(sd, &sd_path, "base")?, &format!("{sd_path}.base"))?;
        let tau = build_tau(&base, field(sd, &sd_path, "tau")?, &format!("{sd_path}.tau"))?;
        return construct_semidirect_with_involution(&base, &tau).map_err(ctx);
    }
    Err(CliError::usage(format!(
        "{path}: expected one of `family`, `generators`, `product`, `semidirect`"
    )))
}

fn element(group: &GroupTable, v: &Value, path: &str) -> Result<ElementId, CliError> {
    group
        .element_by_label(as_str(v, path)?)
        .map_err(|e| CliError::from_core(e, path))
}

fn generator_images(group: &GroupTable, v: &Value, path: &str) -> Result<Vec<(ElementId, ElementId)>, CliError> {
    let obj: BTreeMap<String, Value> = serde_json::from_value(v.clone())
        .map_err(|_| CliError::usage(format!("{path}: expected an object from labels to labels")))?;
    obj.iter()
        .map(|(k, img)| {
            let dom = group
                .element_by_label(k)
                .map_err(|e| CliError::from_core(e, path))?;
            Ok((dom, element(group, img, &format!("{path}.{k}"))?))
        })
        .collect()
}

/// Unwraps the optional `{"tau": ...}` / `{"sigma": ...}` envelope.
fn unwrap<'a>(v: &'a Value, key: &str) -> &'a Value {
    match v.as_object() {
        Some(o) if o.len() == 1 && o.contains_key(key) => &o[key],
        _ => v,
    }
}

pub fn build_tau(group: &GroupTable, v: &Value, path: &str) -> Result<GroupMap, CliError> {
    let ctx = |e: taumackey::Error| CliError::from_core(e, path);
    let v = unwrap(v, "tau");
    if let Some(word) = v.as_str() {
        return match word {
            "inverse" | "inv" => Ok(tau_inverse(group)),
            "identity" | "id" => tau_identity(group).map_err(ctx),
            "clifford" => tau_clifford(group).map_err(ctx),
            other => Err(CliError::usage(format!("{path}: unknown τ `{other}`"))),
        };
    }
    if let Some(g0) = v.get("inner") {
        let g0 = element(group, g0, &format!("{path}.inner"))?;
        return tau_inner(group, g0).map_err(ctx);
    }
    if let Some(images) = v.get("generator_images") {
        let pairs = generator_images(group, images, &format!("{path}.generator_images"))?;
        return map_from_generator_images(group, &pairs, MapKind::AntiAutomorphism, true).map_err(ctx);
    }
    Err(CliError::usage(format!(
        "{path}: expected `inverse`, `identity`, `clifford`, {{\"inner\": ..}} or {{\"generator_images\": ..}}"
    )))
}

pub fn build_sigma(group: &GroupTable, v: &Value, path: &str) -> Result<GroupMap, CliError> {
    let ctx = |e: taumackey::Error| CliError::from_core(e, path);
    let v = unwrap(v, "sigma");
    if let Some(word) = v.as_str() {
        return match word {
            "identity" | "id" => Ok(identity_automorphism(group)),
            "swap" => swap_factors(group).map_err(ctx),
            other => Err(CliError::usage(format!("{path}: unknown σ `{other}`"))),
        };
    }
    if let Some(g) = v.get("conjugation") {
        return Ok(conjugation(group, element(group, g, &format!("{path}.conjugation"))?));
    }
    if let Some(images) = v.get("generator_images") {
        let pairs = generator_images(group, images, &format!("{path}.generator_images"))?;
        return map_from_generator_images(group, &pairs, MapKind::Automorphism, false).map_err(ctx);
    }
    Err(CliError::usage(format!(
        "{path}: expected `identity`, `swap`, {{\"conjugation\": ..}} or {{\"generator_images\": ..}}"
    )))
}

pub fn build_subgroup(group: &GroupTable, v: &Value, path: &str) -> Result<Subgroup, CliError> {
    if let Some(gens) = v.get("generators") {
        let gens = gens
            .as_array()
            .ok_or_else(|| CliError::usage(format!("{path}.generators: expected an array")))?
            .iter()
            .enumerate()
            .map(|(i, g)| element(group, g, &format!("{path}.generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        return Subgroup::generated(group, &gens).map_err(|e| CliError::from_core(e, path));
    }
    if let Some(sigma) = v.get("centralizer_of_sigma") {
        let sigma = build_sigma(group, sigma, &format!("{path}.centralizer_of_sigma"))?;
        return taumackey::gelfand::fixed_subgroup(group, &sigma).map_err(|e| CliError::from_core(e, path));
    }
    Err(CliError::usage(format!(
        "{path}: expected `generators` or `centralizer_of_sigma`"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn families_and_products() {
        assert_eq!(build_group(&json!({"family": "symmetric", "n": 4}), "group").unwrap().order(), 24);
        let p = json!({"product": [{"family": "cyclic", "n": 2}, {"family": "alternating", "n": 5}]});
        assert_eq!(build_group(&p, "group").unwrap().order(), 120);
        let perm = json!({"generators": ["(1 2 3)", "(1 2)"], "degree": 3});
        assert_eq!(build_group(&perm, "group").unwrap().order(), 6);
        let sd = json!({"semidirect": {"base": {"family": "cyclic", "n": 3}, "tau": "identity"}});
        assert!(!build_group(&sd, "group").unwrap().is_abelian());
    }

    #[test]
    fn errors_name_the_field() {
        let e = build_group(&json!({"family": "symmetric"}), "group").unwrap_err();
        assert!(e.message.contains("group: missing field `n`"), "{}", e.message);
        let e = build_group(&json!({"family": "klein"}), "group").unwrap_err();
        assert!(e.message.contains("group.family"));
        let g = build_group(&json!({"family": "symmetric", "n": 3}), "group").unwrap();
        let e = build_tau(&g, &json!({"inner": "(9 9)"}), "tau").unwrap_err();
        assert!(e.message.starts_with("tau.inner"));
    }

    #[test]
    fn tau_forms() {
        let g = build_group(&json!({"family": "symmetric", "n": 3}), "group").unwrap();
        assert!(build_tau(&g, &json!("inverse"), "tau").is_ok());
        assert!(build_tau(&g, &json!({"tau": "inverse"}), "tau").is_ok());
        assert!(build_tau(&g, &json!("identity"), "tau").is_err());
        assert!(build_tau(&g, &json!({"inner": "(1 2)"}), "tau").is_ok());
        let t = build_tau(&g, &json!({"generator_images": {"(1 2)": "(1 2)", "(1 2 3)": "(1 3 2)"}}), "tau").unwrap();
        assert_eq!(t, tau_inverse(&g));
    }

    #[test]
    fn centralizer_subgroup() {
        let g = build_group(&json!({"family": "symmetric", "n": 4}), "group").unwrap();
        let k = build_subgroup(&g, &json!({"centralizer_of_sigma": {"conjugation": "(1 2)(3 4)"}}), "subgroup").unwrap();
        assert_eq!(k.order(), 8);
    }
}

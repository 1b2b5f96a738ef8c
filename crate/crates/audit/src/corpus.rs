use std::collections::BTreeSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::AuditError;

pub const PERSON_SLOT: &str = "{person}";
pub const EMOTION_SLOT: &str = "{emotion}";

/// One CSV row: `template_id,template,person,gender,emotion_word,emotion_category`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub template_id: String,
    pub template: String,
    pub person: String,
    pub gender: String,
    pub emotion_word: String,
    pub emotion_category: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Template {
    pub id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Person {
    pub text: String,
    pub gender: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EmotionWord {
    pub word: String,
    pub category: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateCorpus {
    pub templates: Vec<Template>,
    pub persons: Vec<Person>,
    pub emotions: Vec<EmotionWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub template_id: String,
    pub person: String,
    pub gender: String,
    pub emotion_word: String,
    pub emotion_category: String,
}

pub fn check_template(template: &Template) -> Result<(), AuditError> {
    for slot in [PERSON_SLOT, EMOTION_SLOT] {
        let n = template.text.matches(slot).count();
        if n != 1 {
            return Err(AuditError::MalformedTemplate {
                id: template.id.clone(),
                message: format!("expected exactly one {slot}, found {n}"),
            });
        }
    }
    Ok(())
}

fn fill(template: &str, person: &str, emotion: &str) -> String {
    let text = template.replace(PERSON_SLOT, person).replace(EMOTION_SLOT, emotion);
    let mut chars = text.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => text,
    }
}

fn sentence(t: &Template, p: &Person, e: &EmotionWord) -> Sentence {
    Sentence {
        text: fill(&t.text, &p.text, &e.word),
        template_id: t.id.clone(),
        person: p.text.clone(),
        gender: p.gender.clone(),
        emotion_word: e.word.clone(),
        emotion_category: e.category.clone(),
    }
}

impl TemplateCorpus {
    pub fn new(
        templates: Vec<Template>,
        persons: Vec<Person>,
        emotions: Vec<EmotionWord>,
    ) -> Result<Self, AuditError> {
        for t in &templates {
            check_template(t)?;
        }
        Ok(TemplateCorpus {
            templates,
            persons,
            emotions,
        })
    }

    /// Distinct templates, persons and emotion words, in first-seen order.
    pub fn from_rows(rows: &[CorpusRow]) -> Result<Self, AuditError> {
        let mut corpus = TemplateCorpus::default();
        let (mut t_seen, mut p_seen, mut e_seen) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for r in rows {
            let t = Template {
                id: r.template_id.clone(),
                text: r.template.clone(),
            };
            if t_seen.insert(t.clone()) {
                check_template(&t)?;
                corpus.templates.push(t);
            }
            let p = Person {
                text: r.person.clone(),
                gender: r.gender.clone(),
            };
            if p_seen.insert(p.clone()) {
                corpus.persons.push(p);
            }
            let e = EmotionWord {
                word: r.emotion_word.clone(),
                category: r.emotion_category.clone(),
            };
            if e_seen.insert(e.clone()) {
                corpus.emotions.push(e);
            }
        }
        Ok(corpus)
    }
}

/// Every template filled with every person and every emotion word, in
/// template, person, emotion order.
pub fn expand_templates(corpus: &TemplateCorpus) -> Vec<Sentence> {
    let mut out = Vec::with_capacity(corpus.templates.len() * corpus.persons.len() * corpus.emotions.len());
    for t in &corpus.templates {
        for p in &corpus.persons {
            for e in &corpus.emotions {
                out.push(sentence(t, p, e));
            }
        }
    }
    out
}

/// The sentences exactly as the rows list them.
pub fn sentences_from_rows(rows: &[CorpusRow]) -> Result<Vec<Sentence>, AuditError> {
    rows.iter()
        .map(|r| {
            let t = Template {
                id: r.template_id.clone(),
                text: r.template.clone(),
            };
            check_template(&t)?;
            let p = Person {
                text: r.person.clone(),
                gender: r.gender.clone(),
            };
            let e = EmotionWord {
                word: r.emotion_word.clone(),
                category: r.emotion_category.clone(),
            };
            Ok(sentence(&t, &p, &e))
        })
        .collect()
}

pub fn read_rows<R: Read>(reader: R) -> Result<Vec<CorpusRow>, AuditError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let rows = rdr
        .deserialize()
        .collect::<Result<Vec<CorpusRow>, csv::Error>>()
        .map_err(|e| AuditError::Corpus(e.to_string()))?;
    for r in &rows {
        check_template(&Template {
            id: r.template_id.clone(),
            text: r.template.clone(),
        })?;
    }
    Ok(rows)
}

pub fn load_rows(path: &std::path::Path) -> Result<Vec<CorpusRow>, AuditError> {
    let file = std::fs::File::open(path).map_err(|e| AuditError::Corpus(format!("{}: {e}", path.display())))?;
    read_rows(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(emotions: &[&str]) -> TemplateCorpus {
        TemplateCorpus::new(
            vec![Template {
                id: "t1".into(),
                text: "{person} is feeling {emotion}".into(),
            }],
            vec![
                Person {
                    text: "my aunt".into(),
                    gender: "female".into(),
                },
                Person {
                    text: "my uncle".into(),
                    gender: "male".into(),
                },
            ],
            emotions
                .iter()
                .map(|w| EmotionWord {
                    word: w.to_string(),
                    category: "sadness".into(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn expansion() {
        let s = expand_templates(&corpus(&["miserable", "sad", "gloomy"]));
        assert_eq!(s.len(), 6);
        assert_eq!(s[0].text, "My aunt is feeling miserable");
        assert_eq!(s[3].gender, "male");
        assert!(expand_templates(&corpus(&[])).is_empty());
    }

    #[test]
    fn templates_need_both_slots_once() {
        let bad = Template {
            id: "x".into(),
            text: "{person} feels fine".into(),
        };
        assert!(matches!(check_template(&bad), Err(AuditError::MalformedTemplate { .. })));
        let twice = Template {
            id: "y".into(),
            text: "{person} and {person} feel {emotion}".into(),
        };
        assert!(check_template(&twice).is_err());
    }

    #[test]
    fn csv_rows() {
        let text = "template_id,template,person,gender,emotion_word,emotion_category\n\
                    t1,{person} feels {emotion},she,female,angry,anger\n\
                    t1,{person} feels {emotion},he,male,angry,anger\n";
        let rows = read_rows(text.as_bytes()).unwrap();
        assert_eq!(rows.len(), 2);
        let c = TemplateCorpus::from_rows(&rows).unwrap();
        assert_eq!((c.templates.len(), c.persons.len(), c.emotions.len()), (1, 2, 1));
        assert_eq!(sentences_from_rows(&rows).unwrap()[1].text, "He feels angry");
        assert!(read_rows("template_id,template\nt1,x\n".as_bytes()).is_err());
    }
}

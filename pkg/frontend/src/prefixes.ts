/** Display-only prefix abbreviation. The wire always carries full IRIs. */

export const PREFIX_TABLE: Record<string, string> = {
  "http://www.w3.org/1999/02/22-rdf-syntax-ns#": "rdf",
  "http://www.w3.org/2000/01/rdf-schema#": "rdfs",
  "http://www.w3.org/2002/07/owl#": "owl",
  "http://www.w3.org/2001/XMLSchema#": "xsd",
  "http://www.w3.org/2004/02/skos/core#": "skos",
  "http://xmlns.com/foaf/0.1/": "foaf",
  "http://purl.org/dc/elements/1.1/": "dc",
  "http://purl.org/dc/terms/": "dcterms",
  "http://schema.org/": "schema",
  "http://dbpedia.org/ontology/": "dbo",
  "http://swrc.ontoware.org/ontology#": "swrc",
  "http://rdfs.org/sioc/ns#": "sioc",
  "http://purl.org/goodrelations/v1#": "gr",
  "http://www.w3.org/ns/dcat#": "dcat",
  "http://purl.org/vocab/bio/0.1/": "bio",
};

/** foaf:Person for known namespaces, otherwise a readable tail of the IRI. */
export function abbreviate(iri: string, table: Record<string, string> = PREFIX_TABLE): string {
  let bestPrefix = "";
  for (const prefix of Object.keys(table)) {
    if (iri.startsWith(prefix) && prefix.length > bestPrefix.length) {
      bestPrefix = prefix;
    }
  }
  if (bestPrefix) {
    return `${table[bestPrefix]}:${iri.slice(bestPrefix.length)}`;
  }
  const hash = iri.lastIndexOf("#");
  const slash = iri.lastIndexOf("/");
  const cut = Math.max(hash, slash);
  if (cut > "https://".length && cut < iri.length - 1) {
    return `…${iri.slice(cut)}`;
  }
  return iri;
}

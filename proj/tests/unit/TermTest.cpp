#include <gtest/gtest.h>

#include "gridkg/rdf/Term.h"
#include "gridkg/rdf/TripleStore.h"
#include "gridkg/rdf/Vocab.h"
#include "gridkg/util/Numbers.h"
#include "gridkg/util/Time.h"

using namespace gridkg;
using rdf::Term;

TEST(TermTest, literalWithoutDatatypeIsXsdString) {
  Term t = Term::literal("v1.0");
  EXPECT_EQ(t.datatype(), vocab::kXsdString);
  EXPECT_TRUE(t.language().empty());
  EXPECT_EQ(t, Term::literal("v1.0", std::string(vocab::kXsdString)));
}

TEST(TermTest, languageLiteralHasNoDatatype) {
  Term t = Term::langLiteral("Electrical Grid", "en");
  EXPECT_TRUE(t.datatype().empty());
  EXPECT_EQ(t.language(), "en");
  EXPECT_NE(t, Term::literal("Electrical Grid"));
}

TEST(TermTest, rejectsIrisWithWhitespace) {
  EXPECT_THROW(Term::iri("http://x.org/a b"), rdf::InvalidTermError);
  EXPECT_THROW(Term::iri("http://x.org/<a>"), rdf::InvalidTermError);
  EXPECT_NO_THROW(Term::iri("https://projekat-artemis.rs/PlantOntology-1.0"));
}

TEST(TermTest, blankLabels) {
  EXPECT_NO_THROW(Term::blank("b1"));
  EXPECT_NO_THROW(Term::blank("d1_x.y"));
  EXPECT_THROW(Term::blank(""), rdf::InvalidTermError);
  EXPECT_THROW(Term::blank("x."), rdf::InvalidTermError);
  EXPECT_THROW(Term::blank("-x"), rdf::InvalidTermError);
}

TEST(TermTest, tripleInvariants) {
  auto iri = Term::iri("http://x.org/a");
  EXPECT_THROW(rdf::Triple::make(Term::literal("x"), iri, iri),
               rdf::InvalidTermError);
  EXPECT_THROW(rdf::Triple::make(iri, Term::blank("b"), iri),
               rdf::InvalidTermError);
}

TEST(TermTest, ntriplesRendering) {
  EXPECT_EQ(Term::iri("http://x.org/a").toNTriples(), "<http://x.org/a>");
  EXPECT_EQ(Term::langLiteral("a\"b", "en").toNTriples(), "\"a\\\"b\"@en");
  EXPECT_EQ(Term::literal("2021-05-20", std::string(vocab::kXsdDate)).toNTriples(),
            "\"2021-05-20\"^^<http://www.w3.org/2001/XMLSchema#date>");
}

TEST(DictionaryTest, encodeDecodeRoundTrip) {
  rdf::TermDictionary dict;
  for (const Term& t :
       {Term::iri("https://projekat-artemis.rs/ElectricalGrid"),
        Term::langLiteral("Electrical Grid", "en"),
        Term::literal("2021-05-20", std::string(vocab::kXsdDate))}) {
    EXPECT_EQ(dict.decode(dict.encode(t)), t);
  }
  EXPECT_EQ(dict.size(), 3u);
}

TEST(DictionaryTest, idsAreDenseInFirstSeenOrder) {
  rdf::TermDictionary dict;
  EXPECT_EQ(dict.encode(Term::iri("http://x.org/a")), 0u);
  EXPECT_EQ(dict.encode(Term::iri("http://x.org/b")), 1u);
  EXPECT_EQ(dict.encode(Term::iri("http://x.org/a")), 0u);
  EXPECT_FALSE(dict.lookup(Term::iri("http://x.org/c")).has_value());
}

TEST(DictionaryTest, decodeUnknownIdThrows) {
  rdf::TermDictionary dict;
  dict.encode(Term::iri("http://x.org/a"));
  EXPECT_THROW(dict.decode(1), rdf::UnknownTermIdError);
}

TEST(TimeTest, parseAndFormat) {
  auto ts = parseTimestamp("2021-05-20T10:00:00Z");
  ASSERT_TRUE(ts);
  EXPECT_EQ(formatTimestamp(*ts), "2021-05-20T10:00:00Z");
  EXPECT_EQ(parseTimestamp("2021-05-20T12:00:00+02:00"), ts);
  EXPECT_EQ(parseTimestamp("2021-05-20 10:00"), ts);
  EXPECT_EQ(parseTimestamp("2021-05-20T10:00:00.750Z"), ts);
  EXPECT_FALSE(parseTimestamp("2021-02-30T10:00:00Z"));
  EXPECT_FALSE(parseTimestamp("yesterday"));
  EXPECT_FALSE(parseTimestamp("2021-05-20T10:00:00Zjunk"));
}

TEST(TimeTest, durations) {
  EXPECT_EQ(parseDuration("2h"), Seconds{7200});
  EXPECT_EQ(parseDuration("15m"), Seconds{900});
  EXPECT_EQ(parseDuration("PT2H30M"), Seconds{9000});
  EXPECT_EQ(parseDuration("P1D"), Seconds{86400});
  EXPECT_FALSE(parseDuration("2 hours"));
  EXPECT_FALSE(parseDuration("PT"));
}

TEST(NumbersTest, canonicalDecimal) {
  EXPECT_EQ(formatDecimal(350.0), "350.0");
  EXPECT_EQ(formatDecimal(44.8), "44.8");
  EXPECT_EQ(formatDecimal(-0.0), "0.0");
  EXPECT_EQ(formatDecimal(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(parseInteger("+12"), 12);
  EXPECT_FALSE(parseInteger("abc"));
  EXPECT_FALSE(parseDouble(""));
  EXPECT_EQ(parseDouble("1e3"), 1000.0);
}

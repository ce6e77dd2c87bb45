#include <gtest/gtest.h>

#include "hmknf/error.hpp"
#include "hmknf/export.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/wfs.hpp"
#include "oracle.hpp"

namespace hmknf {
namespace {

using testing::named;
using testing::read_fixture;

TEST(Export, PrologClauses) {
    DoubledProgram p = compile(parse_program(read_fixture("kb2.kb")));
    std::string text = write_prolog(p);
    EXPECT_NE(text.find("aopnRwy(X):- arwy(X),anonob(A,X),tnot(dcldRwy(X)).\n"), std::string::npos);
    EXPECT_NE(text.find("dopnRwy(X):- drwy(X),dnonob(A,X),tnot(acldRwy(X)),tnot(nopnRwy(X)).\n"), std::string::npos);
    EXPECT_NE(text.find(":- table aopnRwy/1.\n"), std::string::npos);
    EXPECT_NE(text.find("anonob(lfbo,rw1).\n"), std::string::npos);
}

TEST(Export, QuotedConstants) {
    DoubledProgram p = compile(parse_program(read_fixture("ic.kb")));
    std::string text = write_prolog(p);
    EXPECT_NE(text.find("ahasStartTime(notam001,'2025-04-18T06:00:00Z')."), std::string::npos);
}

TEST(Export, RoundTripBothFormats) {
    for (const auto& name : testing::kb_fixtures()) {
        DoubledProgram p = compile(parse_program(read_fixture(name)));
        for (ExportFormat f : {ExportFormat::Native, ExportFormat::Prolog}) {
            SCOPED_TRACE(name + (f == ExportFormat::Native ? " native" : " prolog"));
            DoubledProgram back = read_compiled(write_compiled(p, f));
            EXPECT_EQ(back.rules, p.rules);
            EXPECT_EQ(back.symbols, p.symbols);
            EXPECT_EQ(back.origins, p.origins);
            EXPECT_EQ(back.unsupported.size(), p.unsupported.size());
            EXPECT_EQ(write_compiled(back, f), write_compiled(p, f));
            KnowledgeModel a(p), b(back);
            EXPECT_EQ(named(a.ground(), a.model()), named(b.ground(), b.model()));
        }
    }
}

TEST(Export, BarePrologWithoutHeader) {
    DoubledProgram p = read_compiled(
        "arwy(X):- aopnRwy(X).\n"
        "drwy(X):- dopnRwy(X),tnot(nrwy(X)).\n"
        "aopnRwy(rw1).\n"
        "dopnRwy(rw1):- tnot(nopnRwy(rw1)).\n");
    ASSERT_EQ(p.rules.size(), 4u);
    EXPECT_EQ(p.rules[1].level, RuleLevel::D);
    EXPECT_EQ(p.rules[1].negative.size(), 1u);
    KnowledgeModel m(p);
    EXPECT_EQ(m.truth(Atom{"drwy", {Term::constant("rw1")}, {}}), Truth::True);
}

TEST(Export, Malformed) { EXPECT_THROW(read_compiled("arwy(X :- b."), ParseError); }

}  // namespace
}  // namespace hmknf

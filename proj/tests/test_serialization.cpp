#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "linform/reproduction.hpp"
#include "linform/serialization.hpp"

using namespace linform;

namespace {

const std::string data_dir = LINFORM_DATA_DIR;

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("linform_test_" + name);
}

}  // namespace

TEST(IntJson, SmallAndBig) {
    EXPECT_EQ(int_to_json(Int(-42)), json(-42));
    const Int big = (Int(1) << 100) + 7;
    EXPECT_TRUE(int_to_json(big).is_string());
    EXPECT_EQ(int_from_json(int_to_json(big)), big);
    EXPECT_EQ(int_from_json(int_to_json(-big)), -big);
    EXPECT_EQ(int_from_json(json(std::numeric_limits<std::uint64_t>::max())), Int(std::numeric_limits<std::uint64_t>::max()));
    EXPECT_THROW(int_from_json(json(1.5)), std::invalid_argument);
    EXPECT_THROW(int_from_json(json("12x")), std::invalid_argument);
}

TEST(SetText, RoundTrip) {
    const Int big = Int(1) << 80;
    const FiniteIntSet A(std::vector<Int>{-5, 0, 3, big});
    std::stringstream buf;
    write_set_text(buf, A, "four elements");
    EXPECT_EQ(buf.str().rfind("# four elements\n", 0), 0u);
    EXPECT_EQ(read_set_text(buf), A);

    std::istringstream messy("  7\n\n# comment\n3 # trailing\n7\n");
    EXPECT_EQ(read_set_text(messy), (FiniteIntSet{3, 7}));
}

TEST(SetJson, RoundTrip) {
    const FiniteIntSet A(std::vector<Int>{-(Int(1) << 70), 1, 2});
    const auto j = set_to_json(A);
    EXPECT_TRUE(j[0].is_string());
    EXPECT_EQ(set_from_json(json::parse(j.dump())), A);
}

TEST(SetFiles, LoadsBothFormats) {
    EXPECT_EQ(load_set(data_dir + "/mstd8.txt"), mstd_example());
    const auto path = temp_path("set.json");
    {
        std::ofstream out(path);
        out << "  [3, 1, \"2\"]";
    }
    EXPECT_EQ(load_set(path.string()), (FiniteIntSet{1, 2, 3}));
    std::filesystem::remove(path);
    EXPECT_THROW(load_set(data_dir + "/missing.txt"), std::runtime_error);
}

TEST(SetList, Parse) {
    EXPECT_EQ(parse_set_list("0,2,3"), (FiniteIntSet{0, 2, 3}));
    EXPECT_EQ(parse_set_list("5"), (FiniteIntSet{5}));
    EXPECT_EQ(parse_set_list("-1, 4"), (FiniteIntSet{-1, 4}));
    EXPECT_THROW(parse_set_list("1,,2"), std::invalid_argument);
    EXPECT_THROW(parse_set_list("1,a"), std::invalid_argument);
}

TEST(ResidueText, RoundTrip) {
    const ResidueSet R(13, {0, 1, 6, 7, 9, 11});
    EXPECT_EQ(format_residue_set(R), "13: 0,1,6,7,9,11");
    EXPECT_EQ(parse_residue_set(format_residue_set(R)), R);
    EXPECT_THROW(parse_residue_set("13 0,1"), std::invalid_argument);
    EXPECT_THROW(parse_residue_set("13: 0,13"), std::invalid_argument);
}

TEST(ResidueJson, RoundTrip) {
    const Int m = (Int(1) << 90) + 1;
    const ResidueSet R(m, {0, m - 1});
    const auto j = residue_set_to_json(R);
    EXPECT_TRUE(j["modulus"].is_string());
    EXPECT_EQ(residue_set_from_json(json::parse(j.dump())), R);
}

TEST(RationalJson, RoundTrip) {
    for (const Rational& r : {Rational(117, 190), Rational(-3), Rational(1, 6)})
        EXPECT_EQ(rational_from_json(rational_to_json(r)), r);
    EXPECT_EQ(rational_from_json(json("4/6")), Rational(2, 3));
}

TEST(LocalSolutions, FixtureAndRoundTrip) {
    const auto j = load_json(data_dir + "/sec4_locals.json");
    const auto f = form_from_json(j.at("form_f")), g = form_from_json(j.at("form_g"));
    EXPECT_EQ(f, LinearForm::binary(2, 1));
    EXPECT_EQ(g, LinearForm::sum());
    const auto locals = local_solutions_from_json(j, f, g);
    ASSERT_EQ(locals.size(), 4u);
    EXPECT_EQ(residue_sets_from_json(j), reference_locals());
    EXPECT_EQ(locals[0].f_card, 12);
    EXPECT_EQ(locals[0].g_card, 13);

    const auto back = local_solutions_from_json(json::parse(local_solutions_to_json(locals).dump()), f, g);
    ASSERT_EQ(back.size(), locals.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].residues, locals[i].residues);
        EXPECT_EQ(back[i].ratio, locals[i].ratio);
    }

    // Given cardinalities are taken as certified, but must be consistent.
    json bad = local_solution_to_json(locals[0]);
    bad["f_card"] = 14;
    EXPECT_THROW(local_solution_from_json(bad, f, g), std::invalid_argument);
    EXPECT_THROW(local_solutions_from_json(json::object({{"locals", 3}}), f, g), std::invalid_argument);
}

TEST(ReportJson, InlineAndFileReference) {
    const auto f = LinearForm::binary(2, 1), g = LinearForm::sum();
    std::vector<LocalSolution> locals;
    for (const auto& R : reference_locals()) locals.push_back(make_local_solution(f, g, R));
    BuildOptions opt;
    opt.mode = BuildMode::direct;
    opt.window_start = 1;
    const auto rep = build_separating_set(f, g, locals, opt);

    const auto j = report_to_json(rep);
    EXPECT_EQ(j["combined_modulus"], 59280);
    EXPECT_EQ(j["window"], json::array({1, 59280}));
    EXPECT_EQ(j["set_size"], 2646);
    EXPECT_EQ(j["f_card"], 108014);
    EXPECT_EQ(j["g_card"], 114575);
    EXPECT_EQ(j["ratio_product"], "117/190");
    EXPECT_EQ(j["target_threshold"], "1/6");
    EXPECT_EQ(j["success"], true);
    EXPECT_EQ(j["certificate"], "direct");
    EXPECT_EQ(j["moduli"], json::array({13, 15, 16, 19}));
    ASSERT_TRUE(j["A"].is_array());
    EXPECT_EQ(set_from_json(j["A"]), *rep.A);

    const auto path = temp_path("A.txt");
    const auto k = report_to_json(rep, 100, path.string());
    EXPECT_EQ(k["A"]["size"], 2646);
    EXPECT_EQ(load_set(k["A"]["file"].get<std::string>()), *rep.A);
    std::filesystem::remove(path);
}

TEST(FormJson, RoundTrip) {
    const auto f = LinearForm::binary(7, -3);
    EXPECT_EQ(form_from_json(json::parse(form_to_json(f).dump())), f);
}

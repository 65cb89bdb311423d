#include <doctest.h>

#include <sstream>

#include "su11/io.hpp"
#include "su11/repkit.hpp"

using namespace su11;

TEST_SUITE("io")
{
    TEST_CASE("17-digit floats")
    {
        CHECK(fmt17(0.1) == "0.10000000000000001");
        CHECK(std::stod(fmt17(1.0 / 3.0)) == 1.0 / 3.0);
        Json j = {{"x", 0.1}, {"n", 3}, {"bad", std::numeric_limits<double>::infinity()}};
        const std::string s = dump(j);
        CHECK(s.find("0.10000000000000001") != std::string::npos);
        CHECK(s.find("\"bad\": null") != std::string::npos);
        CHECK(Json::parse(s)["n"] == 3);
    }

    TEST_CASE("operator round trip")
    {
        Op L = build_ladder(1.5, 6).Lplus;
        Json j = to_json(L);
        CHECK(j["dim"] == 6);
        CHECK(j["basis_tag"] == "su11_number");
        CHECK(j["entries"].size() == 36);
        // row-major: entry (1, 0) sits at index 6
        CHECK(j["entries"][6][0].get<double>() == L(1, 0).real());
        Op back = op_from_json(Json::parse(dump(j)));
        CHECK(max_abs(back.mat() - L.mat()) == 0.0);
        CHECK(back.basis() == Basis::su11_number);

        Json bad = j;
        bad["basis_tag"] = "nonsense";
        CHECK_THROWS_AS(op_from_json(bad), DomainError);
        bad = j;
        bad["dim"] = 5;
        CHECK_THROWS_AS(op_from_json(bad), DomainError);
    }

    TEST_CASE("extension report fields")
    {
        ExtensionReport r;
        r.construction = "heterodyne";
        r.dims = {4, 4};
        r.normality_residual = 1e-15;
        r.checks["x"] = 2.0;
        r.pass = true;
        Json j = to_json(r);
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it)
            keys.push_back(it.key());
        CHECK(keys == std::vector<std::string>{"construction", "dims", "normality_residual", "extension_residual",
                                               "test_family", "grid_spec", "ancilla_spec", "checks", "pass"});
        r.domain_violation = DomainViolation{"e^-x", 3.0};
        CHECK(to_json(r).contains("domain_violation"));
    }

    TEST_CASE("reduction and CSV")
    {
        Json j = to_json(multiparticle_reduction(4));
        CHECK(j["lambda"] == 2.0);
        CHECK(j["subnormal"] == true);

        std::ostringstream os;
        write_csv_header(os, {"re", "im", "density"});
        write_csv_row(os, {0.5, -0.25, 1.0 / 3.0});
        CHECK(os.str() == "re,im,density\n0.5,-0.25,0.33333333333333331\n");

        std::ostringstream st;
        write_state_csv(st, State::basis_vector(3, 1));
        CHECK(st.str().substr(0, st.str().find('\n')).find("re") != std::string::npos);
        int lines = 0;
        for (char c : st.str())
            lines += c == '\n';
        CHECK(lines == 4);
    }
}

// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrdmca/mrdmca.h"

#include <cstdio>
#include <fstream>
#include <string>

TEST_CASE("null arguments are rejected")
{
    CHECK_EQ(mrd_grid_create(nullptr), MRD_INVALID_ARGUMENT);
    CHECK_EQ(mrd_grid_destroy(nullptr), MRD_INVALID_ARGUMENT);
    CHECK_EQ(mrd_grid_set(nullptr, "runs", "1"), MRD_INVALID_ARGUMENT);
    CHECK_EQ(mrd_grid_run(nullptr, 1, nullptr, nullptr), MRD_INVALID_ARGUMENT);
    CHECK_EQ(mrd_results_destroy(nullptr), MRD_INVALID_ARGUMENT);
    CHECK(std::string(mrd_last_error()).size() > 0);
    mrd_string_free(nullptr);
}

TEST_CASE("config errors map to status codes")
{
    mrd_grid* g = nullptr;
    REQUIRE_EQ(mrd_grid_create(&g), MRD_OK);
    CHECK_EQ(mrd_grid_set(g, "protocols", "nosuch"), MRD_CONFIG);
    CHECK(std::string(mrd_last_error()).find("nosuch") != std::string::npos);
    CHECK_EQ(mrd_grid_set(g, "runs", "3"), MRD_OK);
    CHECK_EQ(std::string(mrd_last_error()), "");
    CHECK_EQ(mrd_grid_destroy(g), MRD_OK);
    CHECK_EQ(mrd_grid_create_builtin("nope", &g), MRD_CONFIG);
    CHECK_EQ(mrd_grid_parse_config("/nonexistent/grid.txt", &g), MRD_IO);
    CHECK_EQ(std::string(mrd_status_string(MRD_AUDIT_MISMATCH)), "audit mismatch");
    CHECK(std::string(mrd_version()).size() > 0);
}

TEST_CASE("run, export and audit through the C API")
{
    mrd_grid* g = nullptr;
    REQUIRE_EQ(mrd_grid_create_builtin("smoke", &g), MRD_OK);
    REQUIRE_EQ(mrd_grid_set(g, "runs", "4"), MRD_OK);
    mrd_results* r = nullptr;
    REQUIRE_EQ(mrd_grid_run(g, 2, nullptr, &r), MRD_OK);
    char* agg = nullptr;
    char* per = nullptr;
    REQUIRE_EQ(mrd_results_aggregate_csv(r, &agg), MRD_OK);
    REQUIRE_EQ(mrd_results_per_run_csv(r, &per), MRD_OK);
    size_t incomplete = 99;
    CHECK_EQ(mrd_results_incomplete_count(r, &incomplete), MRD_OK);
    CHECK_EQ(incomplete, 0);
    CHECK(std::string(agg).find("smoke,mrdmca,controlled,3,10,5,off,4,") != std::string::npos);
    {
        std::ofstream f("capi_per_run.csv");
        f << per;
    }
    size_t rows = 0;
    char* report = nullptr;
    CHECK_EQ(mrd_audit_per_run_csv("capi_per_run.csv", &rows, &report), MRD_OK);
    CHECK_EQ(rows, 4);
    mrd_string_free(report);
    mrd_string_free(agg);
    mrd_string_free(per);
    CHECK_EQ(mrd_results_destroy(r), MRD_OK);
    CHECK_EQ(mrd_grid_destroy(g), MRD_OK);

    CHECK_EQ(mrd_deploy_export(5, 0.0, 100.0, 3, "capi_deploy.txt"), MRD_OK);
    std::ifstream d("capi_deploy.txt");
    std::string first;
    std::getline(d, first);
    CHECK(first.rfind("0 ", 0) == 0);
    CHECK_EQ(mrd_deploy_export(10, 100000.0, 1.0, 3, "capi_deploy.txt"), MRD_INFEASIBLE);
    std::remove("capi_per_run.csv");
    std::remove("capi_deploy.txt");
}

#include "doctest.h"
#include "properties.hpp"

using namespace lw::props;

namespace {

void check(const Outcome& o) {
  INFO(o.first);
  CHECK(o.cases >= 1000);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("ring laws") { check(ring_laws(1000, 1)); }
TEST_CASE("partition identity") { check(partition_identity(1000, 2)); }
TEST_CASE("pole part identities") { check(pole_part_identities(1200, 3)); }
TEST_CASE("multiplicative split recomposition") { check(multiplicative_split_recomposition(1000, 4)); }

#ifndef UALG_TESTS_TEST_HELPERS_HPP_
#define UALG_TESTS_TEST_HELPERS_HPP_

#include <set>     // for set
#include <string>  // for string
#include <vector>  // for vector

#include "ualg/algebra.hpp"
#include "ualg/tuple_set.hpp"

namespace ualg::test {

  inline FiniteAlgebra bundled(std::string const& file) {
    return load_algebra_file(std::string(UALG_ALGEBRA_DIR) + "/" + file);
  }

  inline FiniteAlgebra z4() {
    return bundled("z4.json");
  }

  inline FiniteAlgebra s3() {
    return bundled("s3.json");
  }

  inline FiniteAlgebra l22() {
    return bundled("l22.json");
  }

  inline FiniteAlgebra set4() {
    return bundled("set4.json");
  }

  inline FiniteAlgebra e1() {
    return bundled("e1.json");
  }

  inline std::set<std::vector<Element>> as_set(TupleSet const& ts) {
    std::set<std::vector<Element>> out;
    for (auto t : ts) {
      std::vector<Element> v(ts.width());
      for (size_t i = 0; i < v.size(); ++i) {
        v[i] = get(t, i);
      }
      out.insert(v);
    }
    return out;
  }

}  // namespace ualg::test

#endif  // UALG_TESTS_TEST_HELPERS_HPP_

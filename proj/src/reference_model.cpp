#include "tiestrength/reference_model.hpp"

namespace tie::reference {

ParameterManifest manifest() {
  using K = ParameterKind;
  return ParameterManifest({{"wall_post_comments", K::kCount},
                            {"wall_messages", K::kCount},
                            {"tagged_together", K::kCount},
                            {"mutual_photo_by_ego", K::kCount},
                            {"mutual_photo_by_other", K::kCount},
                            {"photo_comments", K::kCount},
                            {"messages", K::kCount},
                            {"close_friend", K::kBinary}});
}

std::vector<double> t_values() {
  return {12.257, 3.397, 5.513, 2.763, 30.157, 0.789, 12.581, 22.837};
}

std::vector<double> mean_decrease_accuracy() {
  return {49.30, 59.53, 48.89, 48.58, 45.95, 37.47, 138.42, 102.65};
}

std::vector<double> k_values() { return {1, 1, 1, 1, 1, 1, 7, 1}; }

std::vector<double> p_values_rounded() {
  return {0.0072, 0.0791, 0.0576, 0.1115, 0.1115, 0.0072, 0.6330, 1.0000};
}

SurveyTally survey_tally() {
  SurveyTally tally;
  tally.categories = {{"comments", 2, 139, std::nullopt},
                      {"wall_messages", 11, 139, std::nullopt},
                      {"tags", 8, 139, std::nullopt},
                      {"mutual_photos", 31, 139, std::nullopt},
                      {"messages", 88, 139, std::nullopt}};
  tally.category_of = {{"wall_post_comments", "comments"},
                       {"wall_messages", "wall_messages"},
                       {"tagged_together", "tags"},
                       {"mutual_photo_by_ego", "mutual_photos"},
                       {"mutual_photo_by_other", "mutual_photos"},
                       {"photo_comments", "comments"},
                       {"messages", "messages"}};
  tally.fixed_p = {{"close_friend", 1.0}};
  return tally;
}

std::vector<double> example_friend_b() {
  return {0, 0, 0, 0.016260163, 0.006097561, 0.004405286, 0.0336021542, 0};
}

std::vector<double> example_friend_c() {
  return {0, 0, 0, 0, 0.006097561, 0, 0.0134639900, 0};
}

std::vector<CurvePoint> messages_k_curve() {
  return {{1, 0.8232},  {2, 0.8312},  {3, 0.8355},  {4, 0.8363},  {5, 0.8374},
          {6, 0.8375},  {7, 0.8380},  {10, 0.8380}, {50, 0.8380}, {100, 0.8380}};
}

}  // namespace tie::reference

#pragma once

#include <array>
#include <vector>

#include "tiestrength/model.hpp"
#include "tiestrength/survey.hpp"

// Constants of the reference eight-parameter model, in manifest
// order:
//   wall_post_comments     friend's comments on a wall post of the ego
//   wall_messages          friend's messages on the ego's wall
//   tagged_together        ego and friend tagged together in a post
//   mutual_photo_by_ego    mutual photo published by the ego
//   mutual_photo_by_other  mutual photo published by a third user
//   photo_comments         friend's comments on the ego's photos
//   messages               messages exchanged
//   close_friend           ego put the friend on the close-friends list
namespace tie::reference {

ParameterManifest manifest();

std::vector<double> t_values();                // linear regression |t|
std::vector<double> mean_decrease_accuracy();  // random forest importance
std::vector<double> k_values();                // messages boosted to 7
std::vector<double> p_values_rounded();        // survey p, 4 decimals
SurveyTally survey_tally();

// Normalized interaction vectors of the worked example (ego A, friends B, C)
// and the link weights reported for them.
std::vector<double> example_friend_b();
std::vector<double> example_friend_c();
inline constexpr double kExampleWeightB = 20.49882;
inline constexpr double kExampleWeightC = 8.196606;

struct CurvePoint {
  double k;
  double accuracy;
};
// Pair accuracy (ties excluded) against the messages boost coefficient.
std::vector<CurvePoint> messages_k_curve();

}  // namespace tie::reference

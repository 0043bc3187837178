pub mod cost;
pub mod flowfield;
pub mod geometry;
pub mod kinematics;
pub mod mission;
pub mod search;
pub mod smoothing;

//! Enumerate guessed radius profiles around a k-center value.

use colorful_radii::profiles::enumerate_profiles;

fn main() -> colorful_radii::Result<()> {
    let (k, value, beta, eps) = (3, 1.0, 1.0, 0.5);
    let stream = enumerate_profiles(k, value, beta, eps)?;
    let grid = stream.grid().clone();
    println!("heads: {:?}", grid.heads());
    println!("{} profiles in total", grid.profile_count());
    for p in stream.take(8) {
        println!("{:?}  sum {:.4}", p.radii(), p.sum());
    }
    Ok(())
}

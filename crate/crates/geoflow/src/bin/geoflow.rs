fn main() {
    println!("geoflow");
}

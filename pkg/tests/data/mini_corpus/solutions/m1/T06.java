class Shape {
    double area() {
        return 0.0;
    }
}
class Circle extends Shape {
    double radius;

    double area() {
        throw new UnsupportedOperationException();
    }
}

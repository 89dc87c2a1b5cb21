class Point {
    public int x;
    public int y;

    public int getX() {
        return x;
    }
}
